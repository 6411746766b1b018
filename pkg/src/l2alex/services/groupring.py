import logging
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..models.reports import GrowthRateReport
from ..utils.errors import ParseError

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def free_reduce(letters: Iterable[Letter]) -> "Word":
    """
    Freely reduce a raw sequence of (generator, exponent) pairs.

    Args:
        letters: Pairs in any form, zero exponents and repeated generators allowed

    Returns:
        The unique freely reduced Word equal to the input in the free group
    """
    stack: List[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged != 0:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return Word._from_reduced(tuple(stack))


class Word:
    """
    Freely reduced word in a free group, run-length encoded as (generator, exponent) pairs.

    Adjacent pairs always carry distinct generators; the empty tuple is the identity.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        reduced = free_reduce(letters)
        self.letters: Tuple[Letter, ...] = reduced.letters
        self._hash = hash(self.letters)

    @classmethod
    def _from_reduced(cls, letters: Tuple[Letter, ...]) -> "Word":
        word = cls.__new__(cls)
        word.letters = letters
        word._hash = hash(letters)
        return word

    @classmethod
    def identity(cls) -> "Word":
        return cls._from_reduced(())

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        return free_reduce([(index, exponent)])

    def __mul__(self, other: "Word") -> "Word":
        if not other.letters:
            return self
        if not self.letters:
            return other
        left, right = self.letters, other.letters
        i, j = len(left), 0
        # only the junction can cancel
        while i and j < len(right) and left[i - 1][0] == right[j][0]:
            gen = left[i - 1][0]
            merged = left[i - 1][1] + right[j][1]
            i -= 1
            j += 1
            if merged != 0:
                return Word._from_reduced(left[:i] + ((gen, merged),) + right[j:])
        return Word._from_reduced(left[:i] + right[j:])

    def inverse(self) -> "Word":
        return Word._from_reduced(tuple((g, -e) for g, e in reversed(self.letters)))

    def power(self, n: int) -> "Word":
        if n < 0:
            return self.inverse().power(-n)
        result = Word.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def length(self) -> int:
        """Word length in the generators and their inverses."""
        return sum(abs(e) for _, e in self.letters)

    def exponent_sums(self, rank: int) -> List[int]:
        sums = [0] * rank
        for g, e in self.letters:
            sums[g] += e
        return sums

    def is_identity(self) -> bool:
        return not self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other: "Word") -> bool:
        return self.letters < other.letters

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g] if names is not None else f"g{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return " ".join(parts)


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """
    Parse whitespace-separated tokens `name` or `name^<integer>` into a Word.

    Args:
        text: Word text such as "x y^-1 x^2"; "1" or "" denote the identity
        generators: Ordered generator names

    Returns:
        The freely reduced Word
    """
    index = {name: i for i, name in enumerate(generators)}
    letters: List[Letter] = []
    for token in text.split():
        if token == "1":
            continue
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"Malformed word token: {token!r}")
        name, exp = match.group(1), match.group(2)
        if name not in index:
            raise ParseError(f"Unknown generator {name!r} in word {text!r}")
        letters.append((index[name], int(exp) if exp is not None else 1))
    return free_reduce(letters)


class GroupRingElem:
    """
    Finite rational combination of words; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, Fraction]] = None):
        clean: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[word] = coeff
        self.terms = clean

    @classmethod
    def _trusted(cls, terms: Dict[Word, Fraction]) -> "GroupRingElem":
        elem = cls.__new__(cls)
        elem.terms = terms
        return elem

    @classmethod
    def zero(cls) -> "GroupRingElem":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "GroupRingElem":
        return cls._trusted({Word.identity(): Fraction(1)})

    @classmethod
    def from_word(cls, word: Word, coeff=1) -> "GroupRingElem":
        return cls({word: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self.terms.values()), Fraction(0))

    def augmentation(self) -> Fraction:
        """Sum of coefficients (image under every word -> 1)."""
        return sum(self.terms.values(), Fraction(0))

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            value = terms.get(word, 0) + coeff
            if value:
                terms[word] = value
            else:
                terms.pop(word, None)
        return GroupRingElem._trusted(terms)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem._trusted({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + (-other)

    def scale(self, scalar) -> "GroupRingElem":
        scalar = Fraction(scalar)
        if scalar == 0:
            return GroupRingElem.zero()
        return GroupRingElem._trusted({w: c * scalar for w, c in self.terms.items()})

    def left_word(self, word: Word) -> "GroupRingElem":
        return GroupRingElem._trusted({word * w: c for w, c in self.terms.items()})

    def __mul__(self, other: "GroupRingElem") -> "GroupRingElem":
        return ring_mul(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"GroupRingElem({self.format()})"

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            coeff = self.terms[word]
            body = word.format(names)
            if body == "1":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    """
    Multiply two group-ring elements by distributing and freely reducing.

    The l1 norm is submultiplicative: |ab|_1 <= |a|_1 |b|_1.
    """
    terms: Dict[Word, Fraction] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w = u * v
            value = terms.get(w, 0) + cu * cv
            if value:
                terms[w] = value
            else:
                terms.pop(w, None)
    return GroupRingElem._trusted(terms)


class GroupRingMatrix:
    """
    Dense rectangular matrix over the rational group ring of a free group.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[GroupRingElem]], cols: Optional[int] = None):
        self.entries: Tuple[Tuple[GroupRingElem, ...], ...] = tuple(tuple(r) for r in entries)
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
        else:
            self.cols = cols or 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("GroupRingMatrix rows must have equal length")

    @classmethod
    def identity(cls, n: int) -> "GroupRingMatrix":
        return cls([[GroupRingElem.one() if i == j else GroupRingElem.zero() for j in range(n)]
                    for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GroupRingMatrix":
        return cls([[GroupRingElem.zero() for _ in range(cols)] for _ in range(rows)], cols=cols)

    def __getitem__(self, index: Tuple[int, int]) -> GroupRingElem:
        i, j = index
        return self.entries[i][j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "GroupRingMatrix":
        return GroupRingMatrix([[self.entries[i][j] for i in range(self.rows)]
                                for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = GroupRingElem.zero()
                for k in range(self.cols):
                    if self.entries[i][k].terms and other.entries[k][j].terms:
                        acc = acc + ring_mul(self.entries[i][k], other.entries[k][j])
                row.append(acc)
            out.append(row)
        return GroupRingMatrix(out, cols=other.cols)

    def __add__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        return GroupRingMatrix([[a + b for a, b in zip(ra, rb)]
                                for ra, rb in zip(self.entries, other.entries)], cols=self.cols)

    def __sub__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        return GroupRingMatrix([[a - b for a, b in zip(ra, rb)]
                                for ra, rb in zip(self.entries, other.entries)], cols=self.cols)

    def left_word(self, word: Word) -> "GroupRingMatrix":
        """Multiply every entry on the left by a group element (e.g. mu * A)."""
        return GroupRingMatrix([[e.left_word(word) for e in row] for row in self.entries],
                               cols=self.cols)

    def l1_norm(self) -> Fraction:
        """||A||_1 = n * max |a_ij|_1 with n the number of rows."""
        if not self.rows or not self.cols:
            return Fraction(0)
        return self.rows * max(e.l1_norm() for row in self.entries for e in row)

    def norm_matrix(self) -> List[List[Fraction]]:
        """Entrywise l1 norms; majorizes every power through |(XY)_ij| <= sum |X_il||Y_lj|."""
        return [[e.l1_norm() for e in row] for row in self.entries]

    def total_terms(self) -> int:
        return sum(len(e) for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"GroupRingMatrix({self.rows}x{self.cols})"


class HomToZk:
    """
    Homomorphism from a finitely presented group to Z^k, given on generators.
    """

    __slots__ = ("rank", "images")

    def __init__(self, images: Sequence[Sequence[int]], rank: Optional[int] = None):
        self.images: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(v) for v in img) for img in images)
        if rank is None:
            rank = len(self.images[0]) if self.images else 0
        self.rank = rank
        if any(len(img) != rank for img in self.images):
            raise ValueError(f"Every generator image must have length {rank}")

    def of_word(self, word: Word) -> Tuple[int, ...]:
        total = [0] * self.rank
        for g, e in word.letters:
            img = self.images[g]
            for i in range(self.rank):
                total[i] += e * img[i]
        return tuple(total)

    def kills(self, relators: Iterable[Word]) -> bool:
        zero = (0,) * self.rank
        return all(self.of_word(r) == zero for r in relators)

    def compose_linear(self, psi: Sequence[int]) -> List[int]:
        """Values psi . h(g_i) per generator."""
        return [sum(p * v for p, v in zip(psi, img)) for img in self.images]

    def __eq__(self, other) -> bool:
        return isinstance(other, HomToZk) and self.images == other.images and self.rank == other.rank

    def __repr__(self) -> str:
        return f"HomToZk(rank={self.rank}, images={list(self.images)})"


def log_fraction(value) -> float:
    """Natural log of a nonnegative rational without passing through float; -inf at 0."""
    value = Fraction(value)
    if value <= 0:
        return float("-inf")
    return math.log(value.numerator) - math.log(value.denominator)


def _norm_product(x: List[List[Fraction]], y: List[List[Fraction]]) -> List[List[Fraction]]:
    n, m, p = len(x), len(y), len(y[0]) if y else 0
    return [[sum((x[i][k] * y[k][j] for k in range(m)), Fraction(0)) for j in range(p)]
            for i in range(n)]


def _predicted_terms(x: GroupRingMatrix, y: GroupRingMatrix) -> int:
    total = 0
    for i in range(x.rows):
        for j in range(y.cols):
            for k in range(x.cols):
                total += len(x.entries[i][k]) * len(y.entries[k][j])
    return total


def growth_rate_upper(a: GroupRingMatrix, k_max: int, max_terms: int = 20000) -> GrowthRateReport:
    """
    Upper bounds (||A^k||_1)^(1/k) for the growth rate h(A) = lim (||A^k||_1)^(1/k).

    Powers A^(2^j) are materialized by repeated squaring while the predicted number of
    group-ring terms stays below max_terms; afterwards the entrywise l1 majorant is
    squared instead, which still bounds ||A^(2^j)||_1 from above. Every other k is filled
    through ||A^k||_1 <= ||A^(2^j)||_1 * ||A^(k - 2^j)||_1.

    Args:
        a: Square group-ring matrix
        k_max: Largest power to report
        max_terms: Term cap for exact group-ring squaring

    Returns:
        GrowthRateReport with raw bounds, their sources and the running minimum
    """
    if not a.is_square():
        raise ValueError(f"growth_rate_upper needs a square matrix, got {a.rows}x{a.cols}")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")

    n = a.rows
    # log ||A^(2^j)||_1 for j = 0, 1, ...
    log_pow: Dict[int, float] = {}
    sources: Dict[int, str] = {}

    exact: Optional[GroupRingMatrix] = a
    majorant: Optional[List[List[Fraction]]] = None
    power = 1
    while power <= k_max:
        if exact is not None:
            norm = exact.l1_norm()
            sources[power] = "exact"
        else:
            norm = n * max(v for row in majorant for v in row)
            sources[power] = "majorant"
        log_pow[power] = log_fraction(norm)

        if power * 2 > k_max:
            break
        if exact is not None:
            predicted = _predicted_terms(exact, exact)
            if predicted <= max_terms:
                exact = exact @ exact
            else:
                logger.debug(f"Power {power * 2}: {predicted} predicted terms exceed cap "
                             f"{max_terms}, switching to the l1 majorant")
                majorant = exact.norm_matrix()
                majorant = _norm_product(majorant, majorant)
                exact = None
        else:
            majorant = _norm_product(majorant, majorant)
        power *= 2

    values: List[float] = []
    kinds: List[str] = []
    for k in range(1, k_max + 1):
        if k in log_pow:
            log_bound = log_pow[k]
            kinds.append(sources[k])
        else:
            log_bound = 0.0
            rest = k
            while rest:
                top = 1 << (rest.bit_length() - 1)
                log_bound += log_pow[top]
                rest -= top
            kinds.append("submultiplicative")
        values.append(math.exp(log_bound / k) if log_bound != float("-inf") else 0.0)

    running_min: List[float] = []
    current = float("inf")
    for v in values:
        current = min(current, v)
        running_min.append(current)

    logger.debug(f"growth_rate_upper: k_max={k_max}, bound={running_min[-1]:.6f}")
    return GrowthRateReport(values=values, sources=kinds, running_min=running_min)
