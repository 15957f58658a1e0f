"""The dual-knot mapping cone: double filtration, normal form, U = 1 map.

For integer framing n != 0 the cone runs over A_s, s in [1-g, g] and B_s,
s in [1-g+n, g], and carries a second filtration J and an absolute Maslov
grading alongside the cone filtration I:

    A-elements:  I = max(i, j - s),  J = max(i - 1, j - s) + (2s+n-1)/(2n)
    B-elements:  I = i,              J = i - 1 + (2s+n-1)/(2n)

The flattened complex stores each element through its I = 0 translate
with alexander = J - I and maslov the decorated grading, so it is itself
a filtered complex over GF(2)[U]: U-powers are I-drops and Alexander
drops plus powers are J-drops.  Collapsing J (forgetting alexander)
recovers the plain surgery cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import gf2
from .algebra import (
    Chain,
    FilteredComplex,
    Generator,
    ReducedForm,
    _Reduction,
    check_complex,
    compose_maps,
    reduce,
    require_valid,
)
from .cone import ElementInfo, MappingCone, effective_genus
from .errors import BadFraming, NonIntegral, NormalFormMismatch, NotCycles
from .models import FlipMap, hat_column


@dataclass
class DualCone:
    framing: int
    genus: int
    source: FilteredComplex
    cone: MappingCone
    complex: FilteredComplex           # flattened, (I,J)-decorated
    elements: dict[str, ElementInfo]


def build_dual_cone(c: FilteredComplex, flip: FlipMap, n: int) -> DualCone:
    """Assemble and verify the framing-n dual-knot cone over the model c."""
    if not isinstance(n, int) or n == 0:
        raise BadFraming(f"framing must be a nonzero integer, got {n!r}")
    require_valid(c)
    g = effective_genus(c)
    # floor lowered from 1-g when n >= 2g so every Spin^c sector keeps a vertex
    lo = min(1 - g, g - n + 1)
    a_ts = range(lo, g + 1)
    b_ts = range(lo + n, g + 1)
    cone = MappingCone(c, flip, n, 1, a_ts, b_ts, range_mode="dual")

    def second_filtration(segment: str, t: int, gen: Generator, offset: int) -> Fraction:
        frac = Fraction(2 * t + n - 1, 2 * n)
        if segment == "A":
            j0 = max(Fraction(-1), gen.alexander - t) + frac
        else:
            j0 = frac - 1
        return j0 - offset

    total, table = cone.total_complex(alexander_fn=second_filtration)
    report = check_complex(total)
    if not report.ok:
        raise AssertionError("dual cone failed build-time verification:\n" + str(report))
    return DualCone(n, g, c, cone, total, table)


# -- normal form -------------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    kind: str                 # "free", "horizontal" (d y = U x), "vertical" (d y = x)
    names: tuple[str, ...]    # (gen,) or (y, x)
    position: tuple           # (A, M) data of the generators


@dataclass
class NormalFormResult:
    form: ReducedForm
    summands: tuple[Summand, ...]

    def count(self, kind: str) -> int:
        return sum(1 for s in self.summands if s.kind == kind)


def split_to_summands(c: FilteredComplex) -> ReducedForm:
    """Monomialize the differential by filtered changes of basis only.

    Repeatedly picks an entry that is, within its own row and column,
    minimal in both U-power and j-drop (such a pivot can legally absorb
    its mates), then isolates it.  Raises NormalFormMismatch if no legal
    pivot exists while entries remain, which would mean the complex is not
    a direct sum of one- and two-generator filtered pieces.
    """
    state = _Reduction(c)
    frozen: set[str] = set()
    while True:
        entries = [(s, t, k) for s, t, k in state.iter_entries()
                   if s not in frozen and t not in frozen]
        if not entries:
            break
        pivot = None
        for s, t, k in entries:
            jd = state.j_drop(s, t, k)
            col = [(s2, k2) for s2, t2, k2 in entries if t2 == t]
            row = [(t2, k2) for s2, t2, k2 in entries if s2 == s]
            if all(k2 >= k and state.j_drop(s2, t, k2) >= jd for s2, k2 in col) and \
               all(k2 >= k and state.j_drop(s, t2, k2) >= jd for t2, k2 in row):
                pivot = (s, t, k)
                break
        if pivot is None:
            raise NormalFormMismatch("no filtered splitting: no legal pivot remains")
        e, f, k = pivot
        for s2 in [x for x in state.sources.get(f, set()) if x != e]:
            state.basis_change(s2, e, state.diff[s2][f] - k)
        for t2, d in [(x, v) for x, v in state.diff.get(e, {}).items() if x != f]:
            state.basis_change(f, t2, d - k)
        assert set(state.diff.get(e, {})) == {f} and state.sources.get(f) == {e}
        frozen.update((e, f))
    return state.finish()


def _classify(c: FilteredComplex) -> tuple[Summand, ...]:
    summands: list[Summand] = []
    paired: set[str] = set()
    for src, row in c.differential.items():
        if not row:
            continue
        if len(row) != 1:
            raise NormalFormMismatch(f"{src} has a non-monomial differential after splitting")
        (tgt, k), = row.items()
        g, h = c.generator(src), c.generator(tgt)
        kind = "horizontal" if k > 0 else "vertical"
        if k == 0 and c.j_drop(src, tgt, 0) == 0:
            raise NormalFormMismatch(f"{src} -> {tgt} is a leftover filtered unit")
        summands.append(Summand(kind, (src, tgt),
                                ((g.alexander, g.maslov), (h.alexander, h.maslov))))
        paired.update((src, tgt))
    for g in c.generators:
        if g.name not in paired:
            summands.append(Summand("free", (g.name,), ((g.alexander, g.maslov),)))
    return tuple(summands)


def normal_form(dc: DualCone) -> NormalFormResult:
    """Filtered-reduce the +1-framed dual cone and match it to its normal form.

    Expected shape for the twist-knot mirror models: one free generator at
    the origin, and equally many horizontal pairs U-one step below the
    diagonal and vertical pairs one step above, all at pinned bigradings.
    A mismatch is an error: it means the reduction or the cone is wrong.
    """
    if dc.framing != 1:
        raise BadFraming("normal form is defined for framing +1")
    rf = reduce(dc.complex, "filtered")
    split = split_to_summands(rf.complex)
    combined = ReducedForm(
        dc.complex,
        split.complex,
        compose_maps(split.project, rf.project),
        compose_maps(rf.include, split.include),
    )
    summands = _classify(split.complex)
    by_kind = {"free": [], "horizontal": [], "vertical": []}
    for s in summands:
        by_kind[s.kind].append(s)
    m = len(by_kind["horizontal"])
    if len(by_kind["vertical"]) != m or len(by_kind["free"]) != 1:
        raise NormalFormMismatch(
            f"summand counts (free, horizontal, vertical) = "
            f"({len(by_kind['free'])}, {m}, {len(by_kind['vertical'])})")
    o = by_kind["free"][0]
    if o.position != ((Fraction(0), Fraction(0)),):
        raise NormalFormMismatch(f"free generator at {o.position}, expected the origin")
    for s in by_kind["horizontal"]:
        if s.position != ((Fraction(-1), Fraction(0)), (Fraction(0), Fraction(1))):
            raise NormalFormMismatch(f"horizontal pair at {s.position}")
        y, x = s.names
        if split.complex.differential[y][x] != 1:
            raise NormalFormMismatch("horizontal pair without U-power 1")
    for s in by_kind["vertical"]:
        if s.position != ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1))):
            raise NormalFormMismatch(f"vertical pair at {s.position}")
    return NormalFormResult(combined, summands)


# -- the U = 1 map ------------------------------------------------------------


def minus_slice(c: FilteredComplex, s) -> FilteredComplex:
    """The {i <= 0, j = s} slice: translates U^(A-s) g for A(g) >= s with the
    j-preserving differential, renamed by their generators."""
    s = Fraction(s)
    keep = {g.name for g in c.generators if g.alexander >= s}
    gens = [Generator(g.name, g.alexander, g.maslov - 2 * (g.alexander - s))
            for g in c.generators if g.name in keep]
    diff = {
        src: {tgt: 0 for tgt, k in row.items() if tgt in keep and c.j_drop(src, tgt, k) == 0}
        for src, row in c.differential.items() if src in keep
    }
    return FilteredComplex(gens, diff)


@dataclass
class GMapReport:
    alexander: Fraction
    domain_dim: int
    codomain_dim: int
    matrix: list[list[int]]
    map_rank: int
    kernel: list[Chain]

    @property
    def injective(self) -> bool:
        return self.map_rank == self.domain_dim


def g_map(c: FilteredComplex, alexander=None) -> GMapReport:
    """Matrix of the U = 1 map on minus-flavor homology in one Alexander grading.

    An element U^(A-s) g of the slice {i <= 0, j = s} is sent by U^s to the
    j = 0 translate of g, so in the chosen bases the chain map is the
    identity on generator names; the matrix is its action from slice
    homology to the homology of the j = 0 column.
    """
    require_valid(c)
    if alexander is None:
        alexander = max(g.alexander for g in c.generators)
    s = Fraction(alexander)
    domain = minus_slice(c, s)
    codomain = hat_column(c)
    rf_dom = reduce(domain, "over_U_units")
    rf_cod = reduce(codomain, "over_U_units")
    cod_names = [g.name for g in rf_cod.complex.generators]
    cod_index = {n: i for i, n in enumerate(cod_names)}
    columns = []
    cycles = []
    for b in rf_dom.complex.generators:
        cycle = rf_dom.pull({b.name: 0})
        cycles.append(cycle)
        image = rf_cod.push({name: 0 for name in cycle})
        bits = 0
        for name in image:
            bits |= 1 << cod_index[name]
        columns.append(bits)
    map_rank, kernel_masks = gf2.column_reduce(columns)
    kernel = []
    for mask in kernel_masks:
        chain: Chain = {}
        for j, cyc in enumerate(cycles):
            if mask >> j & 1:
                for name, power in cyc.items():
                    if name in chain:
                        del chain[name]
                    else:
                        chain[name] = power
        kernel.append(chain)
    matrix = [[columns[j] >> i & 1 for j in range(len(columns))] for i in range(len(cod_names))]
    return GMapReport(s, len(columns), len(cod_names), matrix, map_rank, kernel)


def g_image_class(c: FilteredComplex, cycle_names, s) -> frozenset[tuple[str, int]]:
    """Homology class of the U = 1 image of a slice cycle, in a reduced basis."""
    s = Fraction(s)
    domain = minus_slice(c, s)
    chain = {}
    for name in cycle_names:
        if name in chain:
            del chain[name]
        else:
            chain[name] = 0
    for name in chain:
        if name not in domain:
            raise NotCycles(f"{name} is not in the Alexander-{s} slice")
    bdy = domain.boundary(chain)
    if bdy:
        raise NotCycles(f"chain has nonzero boundary {sorted(bdy)}")
    rf_cod = reduce(hat_column(c), "over_U_units")
    image = rf_cod.push({name: 0 for name in chain})
    return frozenset(image.items())


def distinct_classes(c: FilteredComplex, cycle_a, cycle_b, alexander=None) -> bool:
    """Whether two slice cycles have different U = 1 images in homology."""
    if alexander is None:
        alexander = max(g.alexander for g in c.generators)
    return g_image_class(c, cycle_a, alexander) != g_image_class(c, cycle_b, alexander)


def loss_grading(tb: int, rot: int) -> int:
    """Alexander grading of the Legendrian invariant from (tb, rot)."""
    twice = tb - rot + 1
    if twice % 2 != 0:
        raise NonIntegral(f"(tb - rot + 1)/2 is not an integer for tb={tb}, rot={rot}")
    return twice // 2
