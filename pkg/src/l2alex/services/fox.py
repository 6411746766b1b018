import logging
import math
import string
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from ..models.inputs import EndoInput, PDInput, PresentationInput
from ..utils.errors import PresentationError
from .groupring import GroupRingElem, GroupRingMatrix, HomToZk, Letter, Word, free_reduce, parse_word

logger = logging.getLogger(__name__)

PLACEHOLDER_NOTE = "zero-filled placeholder block, not used by torsion evaluation"


def generator_names(n: int) -> List[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"a{i + 1}" for i in range(n)]


class Presentation:
    """
    Finite presentation <generators | relators>, optionally with a marked map to Z^k.

    kind is one of "generic", "wirtinger" or "torus"; torus presentations also carry (p, q).
    """

    def __init__(
        self,
        generators: Sequence[str],
        relators: Sequence[Word],
        kind: str = "generic",
        phi: Optional[HomToZk] = None,
        torus: Optional[Tuple[int, int]] = None,
    ):
        self.generators: Tuple[str, ...] = tuple(generators)
        self.relators: Tuple[Word, ...] = tuple(relators)
        self.kind = kind
        self.torus = torus
        n = len(self.generators)
        for r in self.relators:
            if any(g >= n for g, _ in r.letters):
                raise PresentationError(f"Relator {r} uses a generator outside the alphabet")
        if phi is not None:
            if len(phi.images) != n:
                raise PresentationError(f"phi has {len(phi.images)} images for {n} generators")
            if not phi.kills(self.relators):
                raise PresentationError("phi does not extend to a homomorphism: a relator has nonzero image")
        self.phi = phi

    @property
    def rank(self) -> int:
        return len(self.generators)

    def is_deficiency_one(self) -> bool:
        return len(self.relators) == len(self.generators) - 1

    def abelianization_map(self) -> HomToZk:
        """
        The marked map, or else the projection onto the free part of H_1.

        The projection comes from the Smith normal form S R T of the relator exponent-sum
        matrix R: a relator's exponent vector times T vanishes on the zero columns of SRT, and
        those columns of T give a surjection onto Z^(n - rank R). Each column is signed so
        that its first nonzero entry is positive.
        """
        if self.phi is not None:
            return self.phi
        n = self.rank
        sums = [r.exponent_sums(n) for r in self.relators]
        if not any(any(row) for row in sums):
            return HomToZk([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        smith, _, t = smith_normal_decomp(Matrix(sums), domain=ZZ)
        columns = []
        for j in range(n):
            if any(smith[i, j] != 0 for i in range(smith.rows)):
                continue
            col = [int(t[i, j]) for i in range(n)]
            lead = next(v for v in col if v)
            columns.append([-v for v in col] if lead < 0 else col)
        if not columns:
            logger.warning(f"{self!r} has finite abelianization; the projection has rank 0")
        logger.debug(f"Abelianization free rank {len(columns)} from {len(sums)} relators")
        return HomToZk([[col[i] for col in columns] for i in range(n)], rank=len(columns))

    def with_phi(self, phi: HomToZk) -> "Presentation":
        return Presentation(self.generators, self.relators, self.kind, phi, self.torus)

    def to_input(self) -> PresentationInput:
        phi = None
        if self.phi is not None:
            phi = {name: list(img) for name, img in zip(self.generators, self.phi.images)}
        return PresentationInput(
            generators=list(self.generators),
            relators=[r.format(self.generators) for r in self.relators],
            phi=phi,
        )

    @classmethod
    def from_input(cls, data: PresentationInput) -> "Presentation":
        relators = [parse_word(text, data.generators) for text in data.relators]
        phi = None
        if data.phi is not None:
            missing = [g for g in data.generators if g not in data.phi]
            if missing:
                raise PresentationError(f"phi is missing generators {missing}")
            phi = HomToZk([data.phi[g] for g in data.generators])
        return cls(data.generators, relators, phi=phi)

    def __repr__(self) -> str:
        rels = ", ".join(r.format(self.generators) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def fox_derivative(w: Word, g: int) -> GroupRingElem:
    """
    Fox derivative of a word with respect to generator g.

    Product rule d(uv) = du + u dv, with d(h^e)/dh = 1 + h + ... + h^(e-1) for e > 0 and
    -(h^-1 + ... + h^e) for e < 0.
    """
    terms: Dict[Word, Fraction] = {}
    letters = w.letters
    for idx, (h, e) in enumerate(letters):
        if h != g:
            continue
        prefix = letters[:idx]
        if e > 0:
            powers, sign = range(0, e), 1
        else:
            powers, sign = range(-1, e - 1, -1), -1
        for j in powers:
            word = Word._from_reduced(prefix + ((h, j),)) if j else Word._from_reduced(prefix)
            value = terms.get(word, 0) + sign
            if value:
                terms[word] = Fraction(value)
            else:
                terms.pop(word, None)
    return GroupRingElem(terms)


def fox_row(w: Word, n: int) -> List[GroupRingElem]:
    return [fox_derivative(w, g) for g in range(n)]


def jacobian(p: Presentation) -> GroupRingMatrix:
    """
    Fox Jacobian: rows are relators, columns generators, entry (j, i) = d r_j / d g_i.
    """
    n = p.rank
    return GroupRingMatrix([fox_row(r, n) for r in p.relators], cols=n)


def _find(parent: Dict[int, int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent: Dict[int, int], a: int, b: int) -> None:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)


def crossing_sign(crossing: Sequence[int], labels: int) -> int:
    """
    Sign of X[i, j, k, l]: +1 when j - l = 1 cyclically, -1 when l - j = 1.
    """
    _, j, _, l = crossing
    if (j - l) % labels == 1:
        return 1
    if (l - j) % labels == 1:
        return -1
    raise PresentationError(f"Crossing {tuple(crossing)} has non-consecutive over-strand labels {j} and {l}")


def wirtinger_from_pd(data: PDInput) -> Presentation:
    """
    Build the Wirtinger presentation of a single-component PD code.

    Args:
        data: PD code, crossings counterclockwise from the incoming under-strand

    Returns:
        Deficiency-one presentation (the last crossing's relator is dropped) with every
        generator mapped to 1 in Z
    """
    crossings = [tuple(c) for c in data.pd]
    if not crossings:
        return Presentation(["a"], [], kind="wirtinger", phi=HomToZk([[1]]))

    counts: Dict[int, int] = {}
    for c in crossings:
        for label in c:
            counts[label] = counts.get(label, 0) + 1
    bad = sorted(label for label, k in counts.items() if k != 2)
    if bad:
        raise PresentationError(f"Arc labels {bad} do not occur exactly twice")

    # components: strands continue i -> k under, j <-> l over
    strands = {label: label for label in counts}
    for i, j, k, l in crossings:
        _union(strands, i, k)
        _union(strands, j, l)
    components = {_find(strands, label) for label in counts}
    if len(components) != 1:
        raise PresentationError(f"PD code has {len(components)} components, expected a knot")

    # Wirtinger arcs: edges glued along over-strands
    arcs = {label: label for label in counts}
    for _, j, _, l in crossings:
        _union(arcs, j, l)
    roots = sorted({_find(arcs, label) for label in counts})
    index = {root: n for n, root in enumerate(roots)}
    names = generator_names(len(roots))

    labels = max(counts)
    relators = []
    for c in crossings[:-1]:
        i, j, k, _ = c
        eps = crossing_sign(c, labels)
        u_in = index[_find(arcs, i)]
        u_out = index[_find(arcs, k)]
        over = index[_find(arcs, j)]
        relators.append(Word([(u_out, -1), (over, eps), (u_in, 1), (over, -eps)]))

    logger.debug(f"Wirtinger presentation: {len(names)} generators, {len(relators)} relators")
    phi = HomToZk([[1] for _ in names])
    return Presentation(names, relators, kind="wirtinger", phi=phi)


def torus_presentation(p: int, q: int) -> Presentation:
    """
    The torus-knot group <x, y | x^p y^-q> with phi(x) = q, phi(y) = p.
    """
    if p < 2 or q < 2:
        raise ValueError(f"Torus knot parameters must be at least 2, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"Torus knot parameters must be coprime, got ({p}, {q})")
    relator = Word([(0, p), (1, -q)])
    return Presentation(["x", "y"], [relator], kind="torus", phi=HomToZk([[q], [p]]), torus=(p, q))


class FreeGroupEndo:
    """
    Endomorphism of a free group, given by the images of its generators.
    """

    def __init__(self, generators: Sequence[str], images: Sequence[Word]):
        if len(generators) != len(images):
            raise PresentationError(f"{len(images)} images for {len(generators)} generators")
        self.generators: Tuple[str, ...] = tuple(generators)
        self.images: Tuple[Word, ...] = tuple(images)
        n = len(self.generators)
        for img in self.images:
            if any(g >= n for g, _ in img.letters):
                raise PresentationError(f"Image {img} leaves the free group of rank {n}")

    @classmethod
    def from_input(cls, data: EndoInput) -> "FreeGroupEndo":
        return cls(data.generators, [parse_word(text, data.generators) for text in data.images])

    @classmethod
    def identity(cls, generators: Sequence[str]) -> "FreeGroupEndo":
        return cls(generators, [Word.generator(i) for i in range(len(generators))])

    @property
    def rank(self) -> int:
        return len(self.generators)

    def _image_letters(self, word: Word) -> Iterator[Letter]:
        inverses: Dict[int, Tuple[Letter, ...]] = {}
        for g, e in word.letters:
            if e > 0:
                block = self.images[g].letters
            else:
                if g not in inverses:
                    inverses[g] = self.images[g].inverse().letters
                block = inverses[g]
            for _ in range(abs(e)):
                yield from block

    def apply(self, word: Word) -> Word:
        """f(word), reduced in one stack pass over the concatenated images."""
        return free_reduce(self._image_letters(word))

    def image_length_bound(self, word: Word) -> int:
        """Length of the unreduced image; an upper bound for len(f(word))."""
        lengths = [img.length() for img in self.images]
        return sum(abs(e) * lengths[g] for g, e in word.letters)

    def compose(self, other: "FreeGroupEndo") -> "FreeGroupEndo":
        """self after other."""
        return FreeGroupEndo(self.generators, [self.apply(img) for img in other.images])

    def iterate(self, m: int) -> "FreeGroupEndo":
        result = FreeGroupEndo.identity(self.generators)
        for _ in range(m):
            result = self.compose(result)
        return result

    def abelianized(self) -> List[List[int]]:
        """Integer matrix with row i the exponent sums of f(g_i)."""
        return [img.exponent_sums(self.rank) for img in self.images]

    def growth_estimates(self, steps: int, max_length: int = 200000) -> List[float]:
        """
        max_i len(f^m(g_i))^(1/m) for m = 1..steps.

        Iteration stops before an iterate whose unreduced length would exceed max_length.
        """
        words = [Word.generator(i) for i in range(self.rank)]
        out: List[float] = []
        for m in range(1, steps + 1):
            bound = max(self.image_length_bound(w) for w in words)
            if bound > max_length:
                logger.debug(f"Stopping word growth at m={m}: unreduced length {bound}")
                break
            words = [self.apply(w) for w in words]
            longest = max(w.length() for w in words)
            out.append(longest ** (1.0 / m) if longest else 0.0)
        return out

    def __repr__(self) -> str:
        maps = ", ".join(f"{g} -> {img.format(self.generators)}"
                         for g, img in zip(self.generators, self.images))
        return f"FreeGroupEndo({maps})"


def monodromy_jacobian(f: FreeGroupEndo) -> GroupRingMatrix:
    """
    n x n matrix with (i, j) entry d f(g_i) / d g_j.
    """
    n = f.rank
    return GroupRingMatrix([fox_row(img, n) for img in f.images], cols=n)


class MappingTorusComplex(NamedTuple):
    """Boundary matrices of the mapping-torus chain complex; mu is generator index n."""
    b3: GroupRingMatrix
    b2: GroupRingMatrix
    b1: GroupRingMatrix


def mapping_torus_matrices(f: FreeGroupEndo) -> MappingTorusComplex:
    """
    Boundary matrices for the cells {S x I} {S, g_i x I} {g_i, p x I} {p}.

    The stable letter mu is the fresh generator with index n. The middle block of B2 is
    id_n - mu * A with A = monodromy_jacobian(f); blocks the construction leaves
    unspecified are zero-filled placeholders.
    """
    n = f.rank
    mu = Word.generator(n)
    one = GroupRingElem.one()
    zero = GroupRingElem.zero()
    one_minus_mu = one - GroupRingElem.from_word(mu)

    a = monodromy_jacobian(f)
    middle = GroupRingMatrix.identity(n) - a.left_word(mu)

    b3 = GroupRingMatrix([[one_minus_mu] + [zero] * n], cols=n + 1)
    b2_rows = [[zero] * (n + 1)]
    for i in range(n):
        b2_rows.append(list(middle.entries[i]) + [zero])
    b2 = GroupRingMatrix(b2_rows, cols=n + 1)
    b1 = GroupRingMatrix([[zero] for _ in range(n)] + [[one_minus_mu]], cols=1)
    logger.debug(f"Mapping torus matrices for rank {n}: {PLACEHOLDER_NOTE}")
    return MappingTorusComplex(b3, b2, b1)


def punctured_mapping_torus_matrices(f: FreeGroupEndo) -> Tuple[GroupRingMatrix, GroupRingMatrix]:
    """
    Two-term complex {g_i x I} | {g_i, p x I} | {p} of the mapping torus of a bordered fiber.

    Returns (B2, B1) with B2 = (id_n - mu A | placeholder) and B1 = (1 - g_i ; 1 - mu).
    """
    n = f.rank
    mu = Word.generator(n)
    one = GroupRingElem.one()
    zero = GroupRingElem.zero()
    middle = GroupRingMatrix.identity(n) - monodromy_jacobian(f).left_word(mu)
    b2 = GroupRingMatrix([list(middle.entries[i]) + [zero] for i in range(n)], cols=n + 1)
    b1_rows = [[one - GroupRingElem.from_word(Word.generator(i))] for i in range(n)]
    b1_rows.append([one - GroupRingElem.from_word(mu)])
    return b2, GroupRingMatrix(b1_rows, cols=1)


def torus_chain_complex() -> Tuple[GroupRingMatrix, GroupRingMatrix]:
    """
    Cellular complex of the 2-torus with cells {T} {x, y} {p}: B = (1-y, x-1), A = (1-x ; 1-y).
    """
    one = GroupRingElem.one()
    x = GroupRingElem.from_word(Word.generator(0))
    y = GroupRingElem.from_word(Word.generator(1))
    b = GroupRingMatrix([[one - y, x - one]], cols=2)
    a = GroupRingMatrix([[one - x], [one - y]], cols=1)
    return b, a
