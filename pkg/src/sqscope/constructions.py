"""Parameterized word families and the closed-form predictions attached to them.

Every builder returns a Prediction bundling the constructed word with the
exact artifacts it is expected to produce (sequence, count, density, leading
double-square pairs), so verification elsewhere is plain equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import FsFactorization, SquareSequence, expand_fs
from .errors import DomainError, InternalInvariantError, ParseError
from .words import Word, is_primitive


@dataclass(frozen=True)
class Prediction:
    """A constructed word plus whatever exact expectations its family defines."""

    word: Word
    expected_length: int
    expected_sequence: SquareSequence | None = None
    expected_count: int | None = None
    expected_density: Fraction | None = None
    expected_fs_pairs: tuple[tuple[Word, Word], ...] | None = None

    def __post_init__(self):
        if self.expected_length != len(self.word):
            raise InternalInvariantError(
                f"constructed word has length {len(self.word)}, "
                f"but the family formula predicts {self.expected_length}"
            )


def _text(parts: str) -> Word:
    return Word.from_text(parts)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


# --- the length-(7m+3) family with m leading double-square positions ---


def build_wm(m: int) -> Prediction:
    """The unique (up to letter renaming) shortest word starting with m
    equal-length double-square positions: (a^{m-1}baa^{m-1}ba^{m-1}ba)^2 a^{m-1}."""
    _require(m >= 1, "m must be at least 1")
    a = "a" * (m - 1)
    base = f"{a}ba{a}b{a}ba"
    word = _text(base * 2 + a)
    pairs = []
    for i in range(1, m + 1):
        u_i = _text("a" * (m - i) + "ba" + a + "b" + "a" * (i - 1))
        big_i = _text("a" * (m - i) + "ba" + a + "b" + a + "b" + "a" * i)
        pairs.append((u_i, big_i))
    return Prediction(
        word=word,
        expected_length=7 * m + 3,
        expected_sequence=expected_sequence_wm(m),
        expected_count=4 * m + m // 2 + 1,
        expected_density=density_wm_formula(m),
        expected_fs_pairs=tuple(pairs),
    )


def expected_sequence_wm(m: int) -> SquareSequence:
    """Closed form 2^m 0^{2m} 1^{m+1} 0 0 1^m 0^{2*floor((m+1)/2)} (10)^{floor(m/2)}."""
    _require(m >= 1, "m must be at least 1")
    digits = (
        "2" * m
        + "0" * (2 * m)
        + "1" * (m + 1)
        + "00"
        + "1" * m
        + "0" * (2 * ((m + 1) // 2))
        + "10" * (m // 2)
    )
    return SquareSequence(digits)


def density_wm_formula(m: int) -> Fraction:
    """(4.5m+1)/(7m+3) for even m, (4.5m+0.5)/(7m+3) for odd m, as an exact rational."""
    _require(m >= 1, "m must be at least 1")
    numerator = 9 * m + 2 if m % 2 == 0 else 9 * m + 1
    return Fraction(numerator, 2 * (7 * m + 3))


def prefix_run_probability(m: int, alphabet_size: int) -> Fraction:
    """Probability that a uniformly random word of length 7m+3 starts with the
    full m-position double-square run: (|A|^2 - |A|) / |A|^(7m+3)."""
    _require(m >= 1, "m must be at least 1")
    _require(alphabet_size >= 2, "alphabet_size must be at least 2")
    return Fraction(alphabet_size**2 - alphabet_size, alphabet_size ** (7 * m + 3))


# --- the length-(6l+m+3) generalization with chosen interior letters ---


def build_wm_ell(m: int, ell: int, letter_choices: tuple[int, ...] | None = None) -> Prediction:
    """Word of length 6*ell+m+3 starting with m double-square positions whose
    roots have lengths 2*ell+1 and 3*ell+2.

    letter_choices supplies the ell-m+1 interior letters; each must differ
    from letter id 0 ('a').  Defaults to all-'b'.
    """
    _require(m >= 1, "m must be at least 1")
    _require(ell >= m, "ell must be at least m")
    if letter_choices is None:
        letter_choices = (1,) * (ell - m + 1)
    letter_choices = tuple(letter_choices)
    _require(
        len(letter_choices) == ell - m + 1,
        f"letter_choices must have exactly {ell - m + 1} entries",
    )
    if any(c == 0 for c in letter_choices):
        raise DomainError(
            "letter_choices must not contain letter id 0: interior letters equal "
            "to 'a' degenerate the construction"
        )
    alpha = Word(bytes(letter_choices))
    a = Word.from_text("a")
    head = a * (m - 1) + alpha + a
    u1 = head + a * (m - 1) + alpha
    big1 = u1 + a * (m - 1) + alpha + a
    word = big1 * 2 + a * (m - 1)
    pairs = []
    for i in range(1, m + 1):
        u_i = a * (m - i) + alpha + a + a * (m - 1) + alpha + a * (i - 1)
        big_i = a * (m - i) + alpha + a + a * (m - 1) + alpha + a * (m - 1) + alpha + a * i
        pairs.append((u_i, big_i))
    return Prediction(
        word=word,
        expected_length=6 * ell + m + 3,
        expected_fs_pairs=tuple(pairs),
    )


# --- words seeded by an arbitrary center Z ---


def build_zword(m: int, z: Word, e1: int, e2: int) -> Prediction:
    """(v1^e1 v2 v1^e2)^2 a^{m-1} with v1 = a^{m-1}Za and v2 = a^{m-1}Z,
    provided a^{m-1}Za is primitive; starts with m double-square positions."""
    _require(m >= 1, "m must be at least 1")
    _require(len(z) > 0, "Z must be non-empty")
    _require(1 <= e2 <= e1, "exponents must satisfy 1 <= e2 <= e1")
    a = Word.from_text("a")
    v1 = a * (m - 1) + z + a
    v2 = a * (m - 1) + z
    if not is_primitive(v1):
        raise DomainError(f"a^(m-1)Za = {v1!r} is not primitive")
    word = expand_fs(FsFactorization(v1, v2, e1, e2)) + a * (m - 1)
    pairs = []
    for i in range(1, m + 1):
        v1_i = a * (m - i) + z + a * i
        v2_i = a * (m - i) + z + a * (i - 1)
        u_i = v1_i * e1 + v2_i
        pairs.append((u_i, u_i + v1_i * e2))
    return Prediction(
        word=word,
        expected_length=2 * (e1 * len(v1) + len(v2) + e2 * len(v1)) + (m - 1),
        expected_fs_pairs=tuple(pairs),
    )


# --- high-density blocks and their concatenations ---


def build_xk(k: int) -> Word:
    """Block a^{k-1}baa^{k-1}ba^{k-1}baa^{k-1}baa^{k-1}ba^{k-1}b of length 6k+3."""
    _require(k >= 1, "k must be at least 1")
    a = "a" * (k - 1)
    return _text(f"{a}ba{a}b{a}ba{a}ba{a}b{a}b")


def build_yij(i: int, j: int) -> Prediction:
    """Concatenation X_i X_{i+1} ... X_j a a^{j-1} of length 7j+3+3j^2-3i^2."""
    _require(1 <= i < j, "need 1 <= i < j")
    word = Word(b"")
    for k in range(i, j + 1):
        word = word + build_xk(k)
    word = word + _text("a" + "a" * (j - 1))
    count = yij_count_formula(i, j)
    length = 7 * j + 3 + 3 * j * j - 3 * i * i
    return Prediction(
        word=word,
        expected_length=length,
        expected_sequence=expected_sequence_yij(i, j),
        expected_count=count,
        expected_density=Fraction(count, length),
    )


def yij_count_formula(i: int, j: int) -> int:
    """4j + floor(j/2) + 1 + (5j^2 - 3j - 5i^2 + 3i)/2; the half term is integral."""
    _require(1 <= i < j, "need 1 <= i < j")
    half_twice = 5 * j * j - 3 * j - 5 * i * i + 3 * i
    if half_twice % 2:
        raise InternalInvariantError("count formula produced a non-integral half term")
    return 4 * j + j // 2 + 1 + half_twice // 2


def expected_sequence_yij(i: int, j: int) -> SquareSequence:
    """Per-block digits 1^{2k+1} 0^{k+1} 1^k 0 1^{2k} for k = i..j-1, then the
    closed-form tail of the length-(7j+3) family."""
    _require(1 <= i < j, "need 1 <= i < j")
    parts = []
    for k in range(i, j):
        parts.append("1" * (2 * k + 1) + "0" * (k + 1) + "1" * k + "0" + "1" * (2 * k))
    parts.append(expected_sequence_wm(j).digits)
    return SquareSequence("".join(parts))


@dataclass(frozen=True)
class XkTableRow:
    """A maximal set of consecutive equal-length distinct squares inside X_k.

    Positions are 1-based within X_k.  Rows with root None mark position
    ranges at which no distinct square has its last occurrence.  Squares after
    the first in a set are successive cyclic shifts of that first root.

    verified_root/verified_root_length hold the enumeration-confirmed content
    where it differs from the claimed one: the row spanning 3k+3..4k+1 claims
    root a^{k-1}ba, but for k >= 2 the square (a^{k-1}ba)^2 recurs in the next
    block, so those positions actually retain rotations of a^{k-1}baa^{k-1}b
    of length 2k+1.  The claimed values are kept so the discrepancy is
    reported rather than silently corrected.
    """

    first_pos: int
    last_pos: int
    count: int
    root: Word | None
    root_length: int
    verified_root: Word | None = None
    verified_root_length: int | None = None

    @property
    def true_root(self) -> Word | None:
        return self.verified_root if self.verified_root is not None else self.root

    @property
    def true_root_length(self) -> int:
        return (
            self.verified_root_length
            if self.verified_root_length is not None
            else self.root_length
        )


def xk_square_table(k: int) -> tuple[XkTableRow, ...]:
    """The seven position ranges of X_k and their square roots; counts total 5k+1."""
    _require(k >= 1, "k must be at least 1")
    a = "a" * (k - 1)
    row3_verified = {}
    if k >= 2:
        row3_verified = {
            "verified_root": _text(f"{a}ba{a}b"),
            "verified_root_length": 2 * k + 1,
        }
    rows = (
        XkTableRow(1, 2 * k + 1, 2 * k + 1, _text(f"{a}ba{a}b{a}ba"), 3 * k + 2),
        XkTableRow(2 * k + 2, 3 * k + 2, k + 1, None, 0),
        XkTableRow(3 * k + 3, 4 * k + 1, k - 1, _text(f"{a}ba"), k + 1, **row3_verified),
        XkTableRow(4 * k + 2, 4 * k + 2, 1, _text(f"ba{a}b{a}"), 2 * k + 1),
        XkTableRow(4 * k + 3, 4 * k + 3, 1, None, 0),
        XkTableRow(4 * k + 4, 5 * k + 3, k, _text(f"{a}b"), k),
        XkTableRow(5 * k + 4, 6 * k + 3, k, _text(f"{a}b{'a' * k}baa"), 2 * k + 3),
    )
    if sum(r.count for r in rows if r.root is not None) != 5 * k + 1:
        raise InternalInvariantError("square table counts do not total 5k+1")
    return rows


# --- the raw factorization family ---


def build_raw_fs(v1: Word, v2: Word, e1: int, e2: int, trailing_a_count: int = 0) -> Prediction:
    """(v1^e1 v2 v1^e2)^2 followed by a run of trailing 'a' letters."""
    _require(trailing_a_count >= 0, "trailing_a_count must be non-negative")
    factorization = FsFactorization(v1, v2, e1, e2)
    word = expand_fs(factorization) + Word.from_text("a" * trailing_a_count)
    u = factorization.u
    big = factorization.U
    return Prediction(
        word=word,
        expected_length=2 * len(big) + trailing_a_count,
        expected_fs_pairs=((u, big),),
    )


# --- the textual spec grammar used by the command line ---

_SPEC_KEYS = {
    "wm": ({"m"}, set()),
    "wml": ({"m", "l"}, {"letters"}),
    "zword": ({"m", "Z", "e1", "e2"}, set()),
    "xk": ({"k"}, set()),
    "yij": ({"i", "j"}, set()),
    "fs": ({"v1", "v2", "e1", "e2"}, {"tail"}),
}


@dataclass(frozen=True)
class ConstructionSpec:
    """A parsed family recipe; build() materializes the word and predictions."""

    variant: str
    m: int | None = None
    ell: int | None = None
    letters: tuple[int, ...] | None = None
    z: Word | None = None
    e1: int | None = None
    e2: int | None = None
    k: int | None = None
    i: int | None = None
    j: int | None = None
    v1: Word | None = None
    v2: Word | None = None
    tail: int = 0

    def build(self) -> Prediction:
        if self.variant == "wm":
            return build_wm(self.m)
        if self.variant == "wml":
            return build_wm_ell(self.m, self.ell, self.letters)
        if self.variant == "zword":
            return build_zword(self.m, self.z, self.e1, self.e2)
        if self.variant == "xk":
            word = build_xk(self.k)
            return Prediction(word=word, expected_length=6 * self.k + 3)
        if self.variant == "yij":
            return build_yij(self.i, self.j)
        if self.variant == "fs":
            return build_raw_fs(self.v1, self.v2, self.e1, self.e2, self.tail)
        raise DomainError(f"unknown construction variant {self.variant!r}")

    def canonical(self) -> str:
        if self.variant == "wm":
            return f"wm:m={self.m}"
        if self.variant == "wml":
            letters = "".join(chr(ord("a") + c) for c in self.letters) if self.letters else ""
            suffix = f",letters={letters}" if letters else ""
            return f"wml:m={self.m},l={self.ell}{suffix}"
        if self.variant == "zword":
            return f"zword:m={self.m},Z={self.z.to_text()},e1={self.e1},e2={self.e2}"
        if self.variant == "xk":
            return f"xk:k={self.k}"
        if self.variant == "yij":
            return f"yij:i={self.i},j={self.j}"
        if self.variant == "fs":
            tail = f",tail={self.tail}" if self.tail else ""
            return f"fs:v1={self.v1.to_text()},v2={self.v2.to_text()},e1={self.e1},e2={self.e2}{tail}"
        raise DomainError(f"unknown construction variant {self.variant!r}")


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"key {key!r}: expected an integer, got {value!r}") from None


def _parse_word(key: str, value: str) -> Word:
    try:
        return Word.from_text(value)
    except ParseError as exc:
        raise ParseError(f"key {key!r}: {exc}") from None


def parse_spec(text: str) -> ConstructionSpec:
    """Parse strings like 'yij:i=5,j=15' or 'fs:v1=aba,v2=ab,e1=2,e2=1,tail=1'."""
    head, sep, rest = text.partition(":")
    if not sep or head not in _SPEC_KEYS:
        known = "|".join(sorted(_SPEC_KEYS))
        raise ParseError(f"unknown construction {head!r}; expected one of {known}")
    required, optional = _SPEC_KEYS[head]
    values: dict[str, str] = {}
    for item in rest.split(",") if rest else []:
        key, eq, value = item.partition("=")
        key = key.strip()
        if not eq or not value:
            raise ParseError(f"key {key or item!r}: expected key=value")
        if key not in required | optional:
            raise ParseError(f"key {key!r} is not valid for {head!r}")
        if key in values:
            raise ParseError(f"key {key!r} given twice")
        values[key] = value.strip()
    missing = required - values.keys()
    if missing:
        raise ParseError(f"key {sorted(missing)[0]!r} is required for {head!r}")

    if head == "wm":
        return ConstructionSpec("wm", m=_parse_int("m", values["m"]))
    if head == "wml":
        letters = None
        if "letters" in values:
            letters = tuple(_parse_word("letters", values["letters"]).symbols)
        return ConstructionSpec(
            "wml", m=_parse_int("m", values["m"]), ell=_parse_int("l", values["l"]), letters=letters
        )
    if head == "zword":
        return ConstructionSpec(
            "zword",
            m=_parse_int("m", values["m"]),
            z=_parse_word("Z", values["Z"]),
            e1=_parse_int("e1", values["e1"]),
            e2=_parse_int("e2", values["e2"]),
        )
    if head == "xk":
        return ConstructionSpec("xk", k=_parse_int("k", values["k"]))
    if head == "yij":
        return ConstructionSpec("yij", i=_parse_int("i", values["i"]), j=_parse_int("j", values["j"]))
    return ConstructionSpec(
        "fs",
        v1=_parse_word("v1", values["v1"]),
        v2=_parse_word("v2", values["v2"]),
        e1=_parse_int("e1", values["e1"]),
        e2=_parse_int("e2", values["e2"]),
        tail=_parse_int("tail", values.get("tail", "0")),
    )
