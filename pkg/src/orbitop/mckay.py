"""The desingularization pipeline for quotients with codimension-two
singular loci.

Given a group of motions of C^n preserving a splitting C + C^{n-1} with
H the pointwise stabilizer of the distinguished line, this module
classifies H to an ADE type, computes the induced action of K = G/H on
the diagram, enumerates the lifts of that action to the extended Weyl
group, decides existence of invariant class pairs, and classifies what
happens on the A-series local models after dividing by K.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ade import (
    DynkinDiagram,
    ExtendedElement,
    RootSystem,
    WeylGroup,
    build_root_system,
    graph_automorphisms,
    weyl_group,
)
from .errors import CapExceededError, PreconditionError
from .exact import Cyclotomic, Matrix
from .group import (
    FiniteMatrixGroup,
    Motion,
    QuotientGroup,
    close,
    conjugacy_classes,
    normal_and_quotient,
    splitting_multiplier,
    stabilizer,
    su_classify,
)
from .invariants.nodes import generic_combination


# ---------------------------------------------------------------------------
# ADE classification of SU(2) subgroups


@dataclass(frozen=True)
class KleinianClassification:
    subgroup: FiniteMatrixGroup
    diagram: DynkinDiagram
    classes: tuple[tuple[int, ...], ...]  # nonidentity classes
    vertex_maps: tuple[tuple[int, ...], ...]  # class position -> vertex
    ambiguous: bool

    @property
    def class_vertex_map(self) -> tuple[int, ...]:
        return self.vertex_maps[0]


def classify_kleinian(h: FiniteMatrixGroup) -> KleinianClassification:
    """Assign the ADE diagram of a finite subgroup of SU(2)."""
    if h.dim_real != 4:
        raise PreconditionError("Kleinian classification needs motions of C^2")
    for m in h.elements:
        if not su_classify(m).in_su():
            raise PreconditionError("subgroup is not inside SU(2)")
    if h.order == 1:
        raise PreconditionError("trivial subgroup gives no singularity")

    order = h.order
    classes = [c for c in conjugacy_classes(h) if c != (h.identity_index,)]
    rank = len(classes)

    cyclic_gen = _cyclic_generator(h)
    if cyclic_gen is not None:
        diagram = DynkinDiagram.make("A", order - 1)
        # Chain ordering: vertex j corresponds to the class of g^(j+1).
        power = cyclic_gen
        vmap = [0] * rank
        for j in range(rank):
            cls_idx = next(i for i, c in enumerate(classes) if power in c)
            vmap[cls_idx] = j
            power = h.mul(power, cyclic_gen)
        return KleinianClassification(
            subgroup=h,
            diagram=diagram,
            classes=tuple(classes),
            vertex_maps=(tuple(vmap),),
            ambiguous=False,
        )

    index2_cyclic = any(
        h.element_order(i) == order // 2 for i in range(order)
    )
    if order % 4 == 0 and index2_cyclic:
        diagram = DynkinDiagram.make("D", order // 4 + 2)
    elif order == 24:
        diagram = DynkinDiagram.make("E", 6)
    elif order == 48:
        diagram = DynkinDiagram.make("E", 7)
    elif order == 120:
        diagram = DynkinDiagram.make("E", 8)
    else:
        raise PreconditionError(f"order {order} is not an SU(2) subgroup order")
    if rank != diagram.rank:
        raise PreconditionError(
            f"class count {rank} does not match rank of {diagram.name}"
        )
    vmaps = _compatible_vertex_maps(h, classes, diagram)
    if not vmaps:
        raise PreconditionError(
            f"no class-vertex matching found for {diagram.name}"
        )
    return KleinianClassification(
        subgroup=h,
        diagram=diagram,
        classes=tuple(classes),
        vertex_maps=vmaps,
        ambiguous=len(vmaps) > 1,
    )


def _cyclic_generator(h: FiniteMatrixGroup) -> int | None:
    for i in range(h.order):
        if h.element_order(i) == h.order:
            return i
    return None


def _compatible_vertex_maps(h, classes, diagram):
    """All bijections classes -> vertices sending equal-signature classes
    to equal-degree vertices.  There is no algorithmic matching beyond
    these invariants, so every compatible bijection is reported."""
    rank = len(classes)
    sigs = [(len(c), h.element_order(c[0])) for c in classes]
    degrees = [diagram.degree(v) for v in range(rank)]
    maps = []
    for perm in itertools.permutations(range(rank)):
        if all(
            degrees[perm[a]] == degrees[perm[b]]
            for a in range(rank)
            for b in range(a + 1, rank)
            if sigs[a] == sigs[b]
        ):
            maps.append(perm)
    return tuple(maps)


# ---------------------------------------------------------------------------
# The diagram action of K and its lifts


@dataclass(frozen=True)
class PsiHom:
    """Homomorphism from K to the diagram automorphisms."""

    source: QuotientGroup
    diagram: DynkinDiagram
    images: tuple[tuple[int, ...], ...]  # coset index -> vertex permutation
    alternatives: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def is_trivial(self) -> bool:
        ident = tuple(range(self.diagram.rank))
        return all(img == ident for img in self.images)


def compute_psi(
    group: FiniteMatrixGroup,
    h_indices,
    classification: KleinianClassification,
) -> PsiHom:
    """Transport the conjugation action of K on nonidentity classes of H
    through the class-vertex map; every coset must land in Aut(diagram).

    classification.subgroup must be the restriction of the h_indices
    elements to the complement of the distinguished line.
    """
    quotient = normal_and_quotient(group, h_indices)
    h_sorted = sorted(h_indices)
    classes = classification.classes
    class_of = {}
    for ci, cls in enumerate(classes):
        for local in cls:
            class_of[local] = ci
    local_of_parent, parent_of_local = _match_subgroup_elements(
        group, h_sorted, classification.subgroup
    )

    auts = set(graph_automorphisms(classification.diagram))
    valid = []
    for vmap in classification.vertex_maps:
        images = []
        ok = True
        for coset_idx in range(quotient.order):
            rep = quotient.coset_rep(coset_idx)
            class_perm = {}
            for ci, cls in enumerate(classes):
                conj = group.conjugate(rep, parent_of_local[cls[0]])
                class_perm[ci] = class_of[local_of_parent[conj]]
            vertex_perm = [0] * classification.diagram.rank
            for ci, cj in class_perm.items():
                vertex_perm[vmap[ci]] = vmap[cj]
            vertex_perm = tuple(vertex_perm)
            if vertex_perm not in auts:
                ok = False
                break
            images.append(vertex_perm)
        if not ok:
            continue
        if _is_perm_hom(quotient, images):
            if tuple(images) not in valid:
                valid.append(tuple(images))
    if not valid:
        raise PreconditionError(
            "conjugation action incompatible with the diagram symmetries "
            f"under every candidate matching ({len(classification.vertex_maps)} tried)"
        )
    return PsiHom(
        source=quotient,
        diagram=classification.diagram,
        images=valid[0],
        alternatives=tuple(valid[1:]),
    )


def _match_subgroup_elements(group, h_sorted, subgroup):
    """Mutual index maps between parent H elements and the standalone
    restricted subgroup, matched on the complement blocks."""
    by_matrix = {m.matrix: i for i, m in enumerate(subgroup.elements)}
    local_of_parent = {}
    parent_of_local = {}
    for parent_idx in h_sorted:
        block = _complement_block(group.elements[parent_idx])
        if block not in by_matrix:
            raise PreconditionError("subgroup elements do not match restriction")
        local = by_matrix[block]
        local_of_parent[parent_idx] = local
        parent_of_local[local] = parent_idx
    return local_of_parent, parent_of_local


def _complement_block(motion: Motion) -> Matrix:
    dim = motion.dim_real
    idx = list(range(2, dim))
    return motion.matrix.submatrix(idx, idx)


def _is_perm_hom(quotient: QuotientGroup, images) -> bool:
    def compose(a, b):
        return tuple(a[b[i]] for i in range(len(a)))

    for x in range(quotient.order):
        for y in range(quotient.order):
            if images[quotient.mul(x, y)] != compose(images[x], images[y]):
                return False
    return True


@dataclass(frozen=True)
class ChiLift:
    """Homomorphism from K to the extended Weyl group lifting psi."""

    psi: PsiHom
    images: tuple[ExtendedElement, ...]  # coset index -> element

    def is_canonical(self) -> bool:
        rank = self.psi.diagram.rank
        return all(e.weyl == Matrix.identity(rank) for e in self.images)


def enumerate_chi_lifts(psi: PsiHom, weyl: WeylGroup) -> list[ChiLift]:
    """All homomorphisms into Aut x| W projecting to psi; the canonical
    lift (identity Weyl parts) comes first, the rest in image order."""
    if not weyl.enumerated:
        raise CapExceededError(
            "lift enumeration needs the Weyl group enumerated under its cap"
        )
    quotient = psi.source
    rank = psi.diagram.rank
    gens = _quotient_generators(quotient)
    words = _quotient_words(quotient, gens)

    candidates = []
    for gen in gens:
        target_aut = psi.images[gen]
        candidates.append(
            [ExtendedElement(aut=target_aut, weyl=w) for w in weyl.elements]
        )
    lifts = []
    seen = set()
    ident = ExtendedElement.identity(rank)
    for assignment in itertools.product(*candidates):
        images = [None] * quotient.order
        images[quotient.identity_coset] = ident
        ok = True
        for coset in range(quotient.order):
            elem = ident
            for gi in words[coset]:
                elem = elem * assignment[gi]
            images[coset] = elem
        for x in range(quotient.order):
            for y in range(quotient.order):
                if images[quotient.mul(x, y)] != images[x] * images[y]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for coset in range(quotient.order):
            if images[coset].aut != psi.images[coset]:
                ok = False
                break
        if not ok:
            continue
        key = tuple((e.aut, e.weyl.data) for e in images)
        if key not in seen:
            seen.add(key)
            lifts.append(ChiLift(psi=psi, images=tuple(images)))
    lifts.sort(
        key=lambda lift: (
            not lift.is_canonical(),
            tuple((e.aut, e.weyl.data) for e in lift.images),
        )
    )
    if not lifts or not lifts[0].is_canonical():
        raise PreconditionError("canonical lift missing from enumeration")
    return lifts


def _quotient_generators(quotient: QuotientGroup) -> tuple[int, ...]:
    gens: list[int] = []
    generated = {quotient.identity_coset}
    for coset in range(quotient.order):
        if coset in generated:
            continue
        gens.append(coset)
        frontier = [coset]
        generated.add(coset)
        while frontier:
            cur = frontier.pop()
            for other in list(generated):
                for p in (quotient.mul(cur, other), quotient.mul(other, cur)):
                    if p not in generated:
                        generated.add(p)
                        frontier.append(p)
        if len(generated) == quotient.order:
            break
    return tuple(gens)


def _quotient_words(quotient: QuotientGroup, gens) -> list[tuple[int, ...]]:
    words: dict[int, tuple[int, ...]] = {quotient.identity_coset: ()}
    frontier = [quotient.identity_coset]
    while frontier:
        nxt = []
        for coset in frontier:
            for gi, gen in enumerate(gens):
                p = quotient.mul(coset, gen)
                if p not in words:
                    words[p] = words[coset] + (gi,)
                    nxt.append(p)
        frontier = nxt
    if len(words) != quotient.order:
        raise PreconditionError("generators do not generate the quotient")
    return [words[c] for c in range(quotient.order)]


# ---------------------------------------------------------------------------
# Invariant class pairs


@dataclass(frozen=True)
class ALESpaceLabel:
    """The pair of classes labelling an asymptotically Euclidean model."""

    diagram: DynkinDiagram
    alpha: tuple[Fraction, ...]
    beta: tuple[Cyclotomic, ...]


@dataclass(frozen=True)
class InvariantPairProblem:
    root_system: RootSystem
    chi: ChiLift
    phi: tuple[Cyclotomic, ...]  # coset index -> unit scalar
    real_fixed_basis: tuple[tuple[Fraction, ...], ...]
    complex_fixed_basis: tuple[tuple[Cyclotomic, ...], ...]


@dataclass(frozen=True)
class InvariantPairDecision:
    exists: bool
    label: ALESpaceLabel | None
    blocking_root: tuple[int, ...] | None


def build_invariant_pair_problem(
    rs: RootSystem, chi: ChiLift, phi
) -> InvariantPairProblem:
    """Fixed spaces of the two twisted dual actions of K."""
    rank = rs.rank
    quotient = chi.psi.source
    field_order = 1
    for s in phi:
        o = s.root_of_unity_order()
        if o is None:
            raise PreconditionError("splitting multiplier is not a root of unity")
        field_order = field_order * o // _gcd(field_order, o)
    field_order = max(field_order, 1)

    real_basis = None
    for coset in range(quotient.order):
        dual = chi.images[coset].dual_matrix()
        block = dual - Matrix.identity(rank)
        real_basis = _intersect_kernel(real_basis, block)
    complex_basis = None
    for coset in range(quotient.order):
        dual = chi.images[coset].dual_matrix()
        scalar = phi[coset].embed(_lcm(field_order, phi[coset].order))
        rows = [
            [scalar * dual[i, j] - (1 if i == j else 0) for j in range(rank)]
            for i in range(rank)
        ]
        block = Matrix(rows)
        complex_basis = _intersect_kernel(complex_basis, block)
    return InvariantPairProblem(
        root_system=rs,
        chi=chi,
        phi=tuple(phi),
        real_fixed_basis=tuple(real_basis or ()),
        complex_fixed_basis=tuple(complex_basis or ()),
    )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lcm(a, b):
    return a * b // _gcd(a, b)


def _intersect_kernel(basis, block):
    if basis is None:
        return block.kernel_basis()
    if not basis:
        return []
    bm = Matrix.from_columns(basis)
    coeffs = (block @ bm).kernel_basis()
    return [bm.apply(c) for c in coeffs]


def invariant_pair_decide(
    problem: InvariantPairProblem, seed: int = 0
) -> InvariantPairDecision:
    """Existence of a fixed pair hitting the genericity condition: for
    every root, some member of the pair must pair nontrivially with it.
    Impossible exactly when some root annihilates both fixed spaces."""
    rs = problem.root_system
    a_basis = problem.real_fixed_basis
    b_basis = problem.complex_fixed_basis
    for delta in rs.roots:
        a_dead = all(_pair(v, delta) == 0 for v in a_basis)
        b_dead = all(_pair(v, delta) == 0 for v in b_basis)
        if a_dead and b_dead:
            return InvariantPairDecision(
                exists=False, label=None, blocking_root=delta
            )
    rank = rs.rank
    forms = [tuple(Fraction(x) for x in delta) for delta in rs.roots]
    if a_basis:
        alpha = generic_combination(a_basis, forms, seed=seed)
    else:
        alpha = tuple(Fraction(0) for _ in range(rank))
    if b_basis:
        beta = tuple(generic_combination(b_basis, forms, seed=seed))
    else:
        zero = Cyclotomic.from_rational(0)
        beta = tuple(zero for _ in range(rank))
    _verify_pair(problem, alpha, beta)
    return InvariantPairDecision(
        exists=True,
        label=ALESpaceLabel(diagram=rs.diagram, alpha=tuple(alpha), beta=beta),
        blocking_root=None,
    )


def _pair(vec, delta):
    total = None
    for a, d in zip(vec, delta):
        term = a * d
        total = term if total is None else total + term
    return 0 if total is None else total


def _verify_pair(problem: InvariantPairProblem, alpha, beta) -> None:
    quotient = problem.chi.psi.source
    rank = problem.root_system.rank
    for coset in range(quotient.order):
        dual = problem.chi.images[coset].dual_matrix()
        image_a = dual.apply(alpha)
        assert tuple(image_a) == tuple(alpha), "alpha is not invariant"
        scalar = problem.phi[coset]
        image_b = [
            scalar * sum(dual[i, j] * beta[j] for j in range(rank))
            for i in range(rank)
        ]
        assert all(x == y for x, y in zip(image_b, beta)), "beta is not invariant"
    for delta in problem.root_system.roots:
        a_val = _pair(alpha, delta)
        b_val = _pair(beta, delta)
        assert a_val != 0 or b_val != 0, "pair misses the genericity condition"


# ---------------------------------------------------------------------------
# Second-stage classification on A-series local models


@dataclass(frozen=True)
class ASeriesModel:
    """The local model: transverse coordinate times the hypersurface
    x y = z^n + deformation, carrying a cyclic action.

    The normal action is the generator's effect upstairs: z1 scales by
    line_multiplier, the two transverse coordinates scale by (p, q).
    side is "deformation" (generic nonzero constant term) or
    "resolution" (constant term zero, blown up).
    """

    n: int
    side: str
    line_multiplier: Cyclotomic
    p: Cyclotomic
    q: Cyclotomic
    k_order: int

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("A-series model needs n >= 2")
        if self.side not in ("deformation", "resolution"):
            raise PreconditionError("side must be deformation or resolution")
        if self.k_order < 1:
            raise PreconditionError("cyclic action order must be positive")


@dataclass(frozen=True)
class FixedLocusPiece:
    description: str
    dimension: int  # complex dimension
    count: int | None  # None when not a finite set of pieces of this kind


@dataclass(frozen=True)
class SecondStageReport:
    outcome: str  # "free" | "isolated fixed points" | "codimension-two" | "degenerate"
    pieces: tuple[FixedLocusPiece, ...]
    per_element: tuple[tuple[int, tuple[FixedLocusPiece, ...]], ...]


def second_stage_classify(model: ASeriesModel) -> SecondStageReport:
    """Fixed-point analysis of the cyclic action on the local model."""
    if model.k_order == 1:
        piece = FixedLocusPiece(
            description="entire space fixed (trivial action)",
            dimension=3,
            count=1,
        )
        return SecondStageReport(
            outcome="degenerate", pieces=(piece,), per_element=()
        )
    per_element = []
    all_pieces: list[FixedLocusPiece] = []
    for t in range(1, model.k_order):
        sigma = model.line_multiplier**t
        p, q = model.p**t, model.q**t
        if model.side == "deformation":
            pieces = _deformation_fixed_pieces(model.n, sigma, p, q)
        else:
            pieces = _resolution_fixed_pieces(model.n, sigma, p, q)
        per_element.append((t, tuple(pieces)))
        all_pieces.extend(pieces)
    if not all_pieces:
        outcome = "free"
    else:
        top = max(piece.dimension for piece in all_pieces)
        if top == 0:
            outcome = "isolated fixed points"
        elif top == 1:
            outcome = "codimension-two"
        else:
            outcome = "degenerate"
    return SecondStageReport(
        outcome=outcome,
        pieces=tuple(all_pieces),
        per_element=tuple(per_element),
    )


def _deformation_fixed_pieces(n, sigma, p, q):
    """Fixed points on {x y - z^n = c}, c generic nonzero, under
    (x, y, z) -> (p^n x, q^n y, (pq) z) and the transverse scaling."""
    a, b, c = p**n, q**n, p * q
    if a * b != 1 or c**n != 1:
        raise PreconditionError(
            "action does not preserve the deformed hypersurface"
        )
    line_dim = 1 if sigma == 1 else 0
    if a == 1 and b == 1 and c == 1:
        if sigma == 1:
            return [
                FixedLocusPiece("entire space fixed", 3, 1)
            ]
        return [
            FixedLocusPiece("whole deformed surface fixed", 2, 1)
        ]
    forced_x = a != 1
    forced_y = b != 1
    forced_z = c != 1
    if forced_x and forced_y and forced_z:
        return []  # x=y=z=0 misses the hypersurface
    if forced_x and forced_y:
        # z free: z^n = -const has n solutions
        return [
            FixedLocusPiece(
                "transverse root points" + (" times a line" if line_dim else ""),
                line_dim,
                n,
            )
        ]
    if forced_z and (forced_x or forced_y):
        return []  # the surviving coordinate axis misses the hypersurface
    if forced_z:
        return [
            FixedLocusPiece(
                "conic x y = const" + (" times a line" if line_dim else ""),
                1 + line_dim,
                1,
            )
        ]
    # exactly one of x, y forced: incompatible with a*b = 1
    raise PreconditionError("inconsistent multipliers on the hypersurface")


def _resolution_fixed_pieces(n, sigma, p, q):
    """Fixed locus on the minimal resolution of x y = z^n under the
    transverse action (z2, z3) -> (p z2, q z3), crossed with the line.

    Chart j of the resolution has coordinates scaling by p^(n-j) q^(-j)
    and p^(-(n-j-1)) q^(j+1); the i-th exceptional curve is pointwise
    fixed iff p^(n-i) = q^i, and the axis strict transforms are fixed
    pointwise iff the corresponding scaling lies in the cyclic group
    being resolved.
    """
    line_dim = 1 if sigma == 1 else 0
    if p == 1 and q == 1:
        return [
            FixedLocusPiece(
                "entire resolution fixed" + (" times a line" if line_dim else ""),
                2 + line_dim,
                1,
            )
        ]
    pieces = []
    fixed_curves = [i for i in range(1, n) if p ** (n - i) == q**i]
    if fixed_curves:
        pieces.append(
            FixedLocusPiece(
                "exceptional curves fixed pointwise"
                + (" times a line" if line_dim else ""),
                1 + line_dim,
                len(fixed_curves),
            )
        )
    # Curve 0 / curve n stand for the axis strict transforms bounding
    # the chain; chart j's origin joins curves j and j+1 and is always
    # fixed, isolated iff neither neighbour is pointwise fixed.
    fixed_boundary = set(fixed_curves)
    if p**n == 1:
        fixed_boundary.add(0)
        pieces.append(
            FixedLocusPiece(
                "first-axis strict transform"
                + (" times a line" if line_dim else ""),
                1 + line_dim,
                1,
            )
        )
    if q**n == 1:
        fixed_boundary.add(n)
        pieces.append(
            FixedLocusPiece(
                "second-axis strict transform"
                + (" times a line" if line_dim else ""),
                1 + line_dim,
                1,
            )
        )
    isolated = sum(
        1
        for j in range(n)
        if j not in fixed_boundary and j + 1 not in fixed_boundary
    )
    if isolated:
        pieces.append(
            FixedLocusPiece(
                "chart origins" + (" times a line" if line_dim else ""),
                line_dim,
                isolated,
            )
        )
    return pieces


@dataclass(frozen=True)
class ResidualSingularity:
    piece: FixedLocusPiece
    group_order: int
    elements: tuple[int, ...]  # exponents of the cyclic generator


def iterate_residual(
    model: ASeriesModel, report: SecondStageReport, parent_order: int
) -> list[ResidualSingularity]:
    """Stabilizers along the fixed locus, as the next-stage quotient
    groups; their orders strictly decrease from the parent group."""
    if report.outcome == "free" or not report.per_element:
        return []
    by_piece: dict[FixedLocusPiece, set[int]] = {}
    for t, pieces in report.per_element:
        for piece in pieces:
            by_piece.setdefault(piece, set()).add(t)
    out = []
    for piece, exps in sorted(
        by_piece.items(), key=lambda kv: (kv[0].description, kv[0].dimension)
    ):
        stab = {0} | exps
        order = len(_cyclic_closure(stab, model.k_order))
        if order <= 1:
            continue
        if order >= parent_order:
            raise PreconditionError(
                "residual group does not strictly decrease"
            )
        out.append(
            ResidualSingularity(
                piece=piece,
                group_order=order,
                elements=tuple(sorted(_cyclic_closure(stab, model.k_order))),
            )
        )
    return out


def _cyclic_closure(exponents, modulus):
    closed = set(exponents)
    frontier = list(closed)
    while frontier:
        cur = frontier.pop()
        for other in list(closed):
            s = (cur + other) % modulus
            if s not in closed:
                closed.add(s)
                frontier.append(s)
    return closed


# ---------------------------------------------------------------------------
# Pipeline assembly


@dataclass(frozen=True)
class PipelineResult:
    group: FiniteMatrixGroup
    h_indices: tuple[int, ...]
    classification: KleinianClassification
    quotient: QuotientGroup
    psi: PsiHom
    weyl: WeylGroup
    lifts: tuple[ChiLift, ...]
    phi: tuple[Cyclotomic, ...]
    decisions: tuple[InvariantPairDecision, ...]


def analyze_splitting(
    group: FiniteMatrixGroup, axis: int = 0, seed: int = 0
) -> PipelineResult:
    """Run the full first-stage pipeline for a group preserving the
    splitting (distinguished complex axis) + (complement)."""
    dim = group.dim_real
    if dim < 6:
        raise PreconditionError("pipeline needs motions of C^3 or larger")
    if axis != 0:
        group = _move_axis_first(group, axis)
        axis = 0
    plane = [
        tuple(Fraction(int(i == 2 * axis)) for i in range(dim)),
        tuple(Fraction(int(i == 2 * axis + 1)) for i in range(dim)),
    ]
    h_indices = stabilizer(group, subspace=plane)
    if len(h_indices) == group.order:
        raise PreconditionError("whole group fixes the distinguished line")
    if len(h_indices) == 1:
        raise PreconditionError(
            "distinguished line has trivial pointwise stabilizer"
        )
    sub_elements = [
        Motion(matrix=_complement_block(group.elements[i])) for i in h_indices
    ]
    subgroup = close(sub_elements)
    if subgroup.order != len(h_indices):
        raise PreconditionError("restricted subgroup does not close to H")
    classification = classify_kleinian(subgroup)
    quotient = normal_and_quotient(group, set(h_indices))
    psi = compute_psi(group, set(h_indices), classification)
    rs = build_root_system(classification.diagram)
    weyl = weyl_group(rs)
    lifts = enumerate_chi_lifts(psi, weyl)
    phi = tuple(
        splitting_multiplier(group.elements[quotient.coset_rep(c)], axis)
        for c in range(quotient.order)
    )
    decisions = []
    for lift in lifts:
        problem = build_invariant_pair_problem(rs, lift, phi)
        decisions.append(invariant_pair_decide(problem, seed=seed))
    return PipelineResult(
        group=group,
        h_indices=tuple(h_indices),
        classification=classification,
        quotient=quotient,
        psi=psi,
        weyl=weyl,
        lifts=tuple(lifts),
        phi=phi,
        decisions=tuple(decisions),
    )


def _move_axis_first(group: FiniteMatrixGroup, axis: int) -> FiniteMatrixGroup:
    """Conjugate the group by the coordinate swap bringing the chosen
    complex axis to position 0; the multiplication table is unchanged."""
    dim = group.dim_real
    perm = list(range(dim))
    perm[0], perm[2 * axis] = perm[2 * axis], perm[0]
    perm[1], perm[2 * axis + 1] = perm[2 * axis + 1], perm[1]
    p = Matrix(
        [
            [Fraction(int(perm[r] == c)) for c in range(dim)]
            for r in range(dim)
        ]
    )
    p_inv = p.inverse()
    elements = tuple(
        Motion(matrix=p @ m.matrix @ p_inv) for m in group.elements
    )
    return FiniteMatrixGroup(
        elements=elements,
        table=group.table,
        identity_index=group.identity_index,
        inverse=group.inverse,
    )
