"""GF(2) parity-check matrices: rank, codeword enumeration, Tanner-graph cycles, alist I/O.

Rows are kept twice: as a read-only ``uint8`` array for numeric work and as
packed Python ints (bit ``i`` set when column ``i`` is 1) for GF(2) algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import (
    DegreeMismatch,
    DimensionTooLarge,
    InvalidMatrix,
    ParseError,
    TrivialCode,
    UnknownName,
    UnsupportedLength,
)

MAX_DIMENSION = 24


@dataclass(frozen=True, eq=False)
class BinaryMatrix:
    """An m x n parity-check matrix over GF(2).

    Construct with :meth:`from_rows` or :meth:`from_array`; the instance is
    immutable once built.
    """

    array: np.ndarray
    name: str = ""
    packed: tuple = field(init=False, repr=False)

    def __post_init__(self):
        a = np.array(self.array, dtype=np.uint8, copy=True)
        if a.ndim != 2:
            raise InvalidMatrix("parity-check matrix must be two-dimensional")
        m, n = a.shape
        if m < 1 or n < 2:
            raise InvalidMatrix(f"need m >= 1 and n >= 2, got {m}x{n}")
        if np.any(a > 1):
            raise InvalidMatrix("entries must be 0 or 1")
        zero_rows = np.flatnonzero(a.sum(axis=1) == 0)
        if zero_rows.size:
            raise InvalidMatrix(f"all-zero row at index {int(zero_rows[0])}")
        a.setflags(write=False)
        object.__setattr__(self, "array", a)
        object.__setattr__(self, "packed", tuple(_pack(row) for row in a))

    @classmethod
    def from_rows(cls, rows, name=""):
        """Build from an iterable of rows given as 0/1 sequences or bit strings."""
        parsed = []
        for row in rows:
            if isinstance(row, str):
                row = [int(ch) for ch in row if ch in "01"]
            parsed.append(list(row))
        return cls(np.array(parsed, dtype=np.uint8), name=name)

    @classmethod
    def from_array(cls, array, name=""):
        return cls(np.asarray(array), name=name)

    @property
    def m(self):
        return self.array.shape[0]

    @property
    def n(self):
        return self.array.shape[1]

    @property
    def shape(self):
        return self.array.shape

    def row_support(self, j):
        """Column indices of the ones in row ``j``."""
        return np.flatnonzero(self.array[j])

    @property
    def supports(self):
        return [self.row_support(j) for j in range(self.m)]

    @property
    def row_weights(self):
        return self.array.sum(axis=1).astype(int)

    def rank(self):
        return gf2_rank(self.packed)

    def syndrome(self, bits):
        bits = np.asarray(bits).astype(np.int64)
        return (self.array.astype(np.int64) @ bits) % 2

    def is_codeword(self, bits):
        return not np.any(self.syndrome(bits))

    def __eq__(self, other):
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.array, other.array))

    def __hash__(self):
        return hash((self.shape, self.packed))

    def __str__(self):
        return "\n".join("".join(str(int(b)) for b in row) for row in self.array)


@dataclass(frozen=True)
class CodeSummary:
    n: int
    k: int
    d_min: int
    codeword_count: int


def _pack(row):
    word = 0
    for i, bit in enumerate(row):
        if bit:
            word |= 1 << int(i)
    return word


def _unpack(word, n):
    return np.array([(word >> i) & 1 for i in range(n)], dtype=np.uint8)


def gf2_rank(words):
    """Rank of a list of packed GF(2) row vectors."""
    basis = {}  # leading bit -> reduced word
    for w in words:
        while w:
            lead = w.bit_length() - 1
            if lead in basis:
                w ^= basis[lead]
            else:
                basis[lead] = w
                break
    return len(basis)


def gf2_nullspace(H: BinaryMatrix):
    """Basis of {x : Hx = 0} as packed ints (reduced row echelon elimination)."""
    n = H.n
    rows = list(H.packed)
    pivots = []  # (column, row word)
    r = 0
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, p in enumerate(pivots):
            if rows[i] >> free & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def code_dimension(H: BinaryMatrix):
    return H.n - H.rank()


def enumerate_codewords(H: BinaryMatrix, max_dimension=MAX_DIMENSION):
    """All codewords of the null space of ``H`` as a (2^k, n) uint8 array.

    Rows are sorted lexicographically, so row 0 is the zero word.
    """
    basis = gf2_nullspace(H)
    k = len(basis)
    if k > max_dimension:
        raise DimensionTooLarge(f"code dimension {k} exceeds guard {max_dimension}")
    gens = np.array([_unpack(b, H.n) for b in basis], dtype=np.uint8).reshape(k, H.n)
    if k == 0:
        return np.zeros((1, H.n), dtype=np.uint8)
    # message bits of every index 0..2^k-1, then multiply by the basis mod 2
    idx = np.arange(1 << k, dtype=np.int64)
    msgs = ((idx[:, None] >> np.arange(k)) & 1).astype(np.uint8)
    words = (msgs.astype(np.int32) @ gens.astype(np.int32)) % 2
    words = words.astype(np.uint8)
    order = np.lexsort(words.T[::-1])
    return words[order]


def min_hamming_distance(H: BinaryMatrix):
    words = enumerate_codewords(H)
    weights = words.sum(axis=1)
    nonzero = weights[weights > 0]
    if nonzero.size == 0:
        raise TrivialCode("the code contains only the zero word")
    return int(nonzero.min())


def hamming_weight_spectrum(H: BinaryMatrix):
    """Map Hamming weight -> number of codewords, excluding the zero word."""
    weights = enumerate_codewords(H).sum(axis=1)
    values, counts = np.unique(weights[weights > 0], return_counts=True)
    return {int(w): int(c) for w, c in zip(values, counts)}


def summarize(H: BinaryMatrix):
    k = code_dimension(H)
    return CodeSummary(n=H.n, k=k, d_min=min_hamming_distance(H), codeword_count=1 << k)


def count_cycles(H: BinaryMatrix, length):
    """Number of simple cycles of the given length (4 or 6) in the Tanner graph of ``H``.

    Both lengths use closed forms over check-node tuples: a 4-cycle is two
    checks and two shared variables; a 6-cycle is three checks with a distinct
    variable shared by each of the three check pairs.
    """
    if length not in (4, 6):
        raise UnsupportedLength(f"cycle length {length} not supported (use 4 or 6)")
    words = H.packed
    m = len(words)
    if length == 4:
        return sum(comb((words[a] & words[b]).bit_count(), 2)
                   for a, b in itertools.combinations(range(m), 2))
    total = 0
    for a, b, c in itertools.combinations(range(m), 3):
        ab = words[a] & words[b]
        if not ab:
            continue
        bc = words[b] & words[c]
        ca = words[c] & words[a]
        if not bc or not ca:
            continue
        x, y, z = ab.bit_count(), bc.bit_count(), ca.bit_count()
        t = (ab & words[c]).bit_count()
        # inclusion-exclusion over the three "shared variable coincides" events
        total += x * y * z - t * (x + y + z) + 2 * t
    return total


# --- alist -----------------------------------------------------------------


def write_alist(H: BinaryMatrix):
    """Serialize ``H`` in MacKay's alist format (1-indexed, zero padded)."""
    a = H.array
    m, n = a.shape
    col_lists = [list(np.flatnonzero(a[:, i]) + 1) for i in range(n)]
    row_lists = [list(np.flatnonzero(a[j]) + 1) for j in range(m)]
    max_col = max(len(c) for c in col_lists)
    max_row = max(len(r) for r in row_lists)
    lines = [
        f"{n} {m}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    for c in col_lists:
        lines.append(" ".join(str(v) for v in c + [0] * (max_col - len(c))))
    for r in row_lists:
        lines.append(" ".join(str(v) for v in r + [0] * (max_row - len(r))))
    return "\n".join(lines) + "\n"


def parse_alist(text, name=""):
    """Parse alist text into a :class:`BinaryMatrix`.

    Raises :class:`ParseError` (with a 1-based line number) on malformed tokens
    and :class:`DegreeMismatch` when the lists disagree with the header.
    """
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks]

    def ints(no, toks):
        try:
            return [int(t) for t in toks]
        except ValueError as exc:
            raise ParseError(f"non-integer token ({exc})", no) from None

    if len(lines) < 4:
        raise ParseError("alist needs at least four header lines", len(lines) + 1)
    no, toks = lines[0]
    head = ints(no, toks)
    if len(head) != 2:
        raise ParseError("first line must be 'n m'", no)
    n, m = head
    if n < 1 or m < 1:
        raise ParseError("n and m must be positive", no)
    no, toks = lines[1]
    maxdeg = ints(no, toks)
    if len(maxdeg) != 2:
        raise ParseError("second line must be 'max_col_degree max_row_degree'", no)
    no3, col_deg = lines[2][0], ints(*lines[2])
    no4, row_deg = lines[3][0], ints(*lines[3])
    if len(col_deg) != n:
        raise DegreeMismatch(f"expected {n} column degrees, got {len(col_deg)}", no3)
    if len(row_deg) != m:
        raise DegreeMismatch(f"expected {m} row degrees, got {len(row_deg)}", no4)
    body = lines[4:]
    if len(body) < n:
        raise DegreeMismatch(f"expected {n} column lists, got {len(body)}",
                             body[-1][0] if body else no4)
    if len(body) != n + m:
        where = body[n + m][0] if len(body) > n + m else body[-1][0]
        raise DegreeMismatch(f"expected {m} row lists, got {len(body) - n}", where)

    a = np.zeros((m, n), dtype=np.uint8)
    for i, (no, toks) in enumerate(body[:n]):
        entries = [v for v in ints(no, toks) if v != 0]
        if len(entries) != col_deg[i]:
            raise DegreeMismatch(f"column {i + 1} lists {len(entries)} rows, degree says {col_deg[i]}", no)
        for r in entries:
            if not 1 <= r <= m:
                raise ParseError(f"row index {r} out of range 1..{m}", no)
            a[r - 1, i] = 1
    b = np.zeros((m, n), dtype=np.uint8)
    for j, (no, toks) in enumerate(body[n:]):
        entries = [v for v in ints(no, toks) if v != 0]
        if len(entries) != row_deg[j]:
            raise DegreeMismatch(f"row {j + 1} lists {len(entries)} columns, degree says {row_deg[j]}", no)
        for c in entries:
            if not 1 <= c <= n:
                raise ParseError(f"column index {c} out of range 1..{n}", no)
            b[j, c - 1] = 1
    if not np.array_equal(a, b):
        raise DegreeMismatch("column lists and row lists describe different matrices", body[n][0])
    return BinaryMatrix(a, name=name)


def read_alist(path):
    with open(path, encoding="utf-8") as fh:
        return parse_alist(fh.read(), name=str(path))


# --- built-in matrices -------------------------------------------------------

_BUILTIN_ROWS = {
    # three representations of the [8, 4, 4] extended Hamming code
    "H1": [
        "11111111",
        "01010101",
        "00110011",
        "00001111",
    ],
    "H2": [
        "11110000",
        "00111100",
        "00001111",
        "01100110",
    ],
    "H3": [
        "00001111",
        "00110011",
        "00111100",
        "01010101",
        "01011010",
        "01100110",
        "01101001",
        "10010110",
        "10011001",
        "10100101",
        "10101010",
        "11000011",
        "11001100",
        "11110000",
    ],
    # [24, 12, 8] extended Golay code
    "HG": [
        "100110101111000001010011",
        "110011010111100000101001",
        "011001101011110000010101",
        "001100110101111000001011",
        "100110011010111100000101",
        "010011001101011110000011",
        "101001100110101111000001",
        "010100110011010111100001",
        "001010011001101011110001",
        "000101001100110101111001",
        "000010100110011010111101",
        "111111111111111111111111",
    ],
    # cycle-reduced version of HG
    "HGp": [
        "100110101111000001010011",
        "010010001100010000101001",
        "111000110000000000010101",
        "000100100001101010000110",
        "100001011011110000000000",
        "000001000001001110101010",
        "101001100110101111000001",
        "001101011000100111110100",
        "000111000001001100000101",
        "001000010100010010001101",
        "001010110010001000110000",
        "110101100110010100001110",
    ],
}

_ALIASES = {"HGP": "HGp", "HG'": "HGp", "H_G": "HG", "H_G'": "HGp", "HAMMING15": "Ham15"}


def hamming_matrix(r, name=""):
    """Standard parity-check matrix of the [2^r - 1, 2^r - 1 - r, 3] Hamming code.

    Column ``i`` (0-based) is the binary expansion of ``i + 1``, most significant
    bit in row 0.
    """
    n = (1 << r) - 1
    cols = np.arange(1, n + 1)
    a = ((cols[None, :] >> np.arange(r - 1, -1, -1)[:, None]) & 1).astype(np.uint8)
    return BinaryMatrix(a, name=name or f"Ham{n}")


def builtin_names():
    return list(_BUILTIN_ROWS) + ["Ham15"]


def builtin_matrix(name):
    """Return one of the named matrices: H1, H2, H3, HG, HGp (plus Ham15)."""
    key = _ALIASES.get(name.upper(), name) if name not in _BUILTIN_ROWS else name
    if key == "Ham15":
        return hamming_matrix(4, name="Ham15")
    if key not in _BUILTIN_ROWS:
        # tolerate case differences such as "h1"
        matches = [k for k in _BUILTIN_ROWS if k.lower() == name.lower()]
        if not matches:
            raise UnknownName(f"unknown matrix name {name!r}; known: {', '.join(builtin_names())}")
        key = matches[0]
    return BinaryMatrix.from_rows(_BUILTIN_ROWS[key], name=key)


def load_matrix(source):
    """Resolve a built-in name or an alist path."""
    try:
        return builtin_matrix(source)
    except UnknownName:
        pass
    import os

    if os.path.exists(source):
        return read_alist(source)
    raise UnknownName(f"{source!r} is neither a built-in matrix nor an existing alist file")
