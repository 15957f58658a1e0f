"""Surgery mapping cones: assembly, hat flavor, sectors, truncation.

For coprime p, q (q > 0) the cone has one copy of the input complex per
vertex (t, A_s) and (t, B_s), s = floor(t/q).  Edges are v_t (the
identity A_t -> B_t) and h_t (U^s after the flip map, A_t -> B_{t+p}).
Everything is stored through the I = 0 translate of each copy, where

    I = max(i, j - s)   on A-vertices,        I = i   on B-vertices,

so a cone element for generator g of Alexander grading A sits at U-offset
max(0, A - s) in an A-copy and offset 0 in a B-copy, and every assembled
differential entry automatically has a nonnegative U-power equal to its
I-drop.  The hat flavor is the I-preserving part on those translates.

Vertex ranges.  The t-window must satisfy two constraints so that the
omitted vertices cancel in (A_t, B_t) pairs via v (an isomorphism once
s >= genus) on the right and in (A_t, B_{t+p}) pairs via h (an
isomorphism once s <= -genus) on the left: the A-window [lo, hi] needs
hi >= gq - 1 and lo <= (1-g)q, and the B-window is then [lo + p, hi].
The "paper" mode is the minimal such window written out by hand, with
the floor lowered to
gq - p when p > (2g-1)q so that every Spin^c sector keeps its surviving
vertex; "full" pads both ends and is the safety net that truncation is
checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping

from . import gf2
from .algebra import (
    FilteredComplex,
    Generator,
    GradedRanks,
    grading_key,
    homology,
    reduce,
    require_valid,
)
from .errors import BadCoefficients, NoSuchVertex, NotTruncatable
from .models import FlipMap


def effective_genus(c: FilteredComplex) -> int:
    """Seifert genus read off the model as max Alexander grading, floored at 1."""
    top = max((g.alexander for g in c.generators), default=Fraction(0))
    if top.denominator != 1:
        raise BadCoefficients("model has non-integral Alexander gradings")
    return max(1, int(top))


@dataclass(frozen=True)
class ConeVertex:
    segment: str  # "A" or "B"
    t: int
    s: int


@dataclass(frozen=True)
class ElementInfo:
    segment: str
    t: int
    s: int
    base: str
    offset: int  # U-power of the stored translate relative to the i = 0 one


class MappingCone:
    def __init__(self, source: FilteredComplex, flip: FlipMap, p: int, q: int,
                 a_ts: Iterable[int], b_ts: Iterable[int], range_mode: str = "custom"):
        if q <= 0 or p == 0 or gcd(p, q) != 1:
            raise BadCoefficients(f"need coprime p != 0, q > 0; got p/q = {p}/{q}")
        require_valid(source)
        self.source = source
        self.flip = flip
        self.p = p
        self.q = q
        self.range_mode = range_mode
        self.genus = effective_genus(source)
        self.a_ts = tuple(sorted(set(a_ts)))
        self.b_ts = tuple(sorted(set(b_ts)))
        self._b_set = set(self.b_ts)
        self._phi: dict[tuple[str, int], Fraction] | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, source: FilteredComplex, flip: FlipMap, p: int, q: int,
              range_mode: str = "paper") -> "MappingCone":
        if q <= 0 or p == 0 or gcd(p, q) != 1:
            raise BadCoefficients(f"need coprime p != 0, q > 0; got p/q = {p}/{q}")
        g = effective_genus(source)
        lo = min((1 - g) * q, g * q - p)
        hi = g * q - 1
        if range_mode == "full":
            pad = g + abs(p) + q
            lo -= pad
            hi += pad
        elif range_mode != "paper":
            raise BadCoefficients(f"unknown range mode {range_mode!r}")
        a_ts = range(lo, hi + 1)
        b_ts = range(lo + p, hi + 1)
        return cls(source, flip, p, q, a_ts, b_ts, range_mode)

    def s_of(self, t: int) -> int:
        return t // self.q

    def spin_c(self, t: int) -> int:
        return t % abs(self.p)

    @property
    def sectors(self) -> range:
        return range(abs(self.p))

    def vertices(self) -> list[ConeVertex]:
        return [ConeVertex("A", t, self.s_of(t)) for t in self.a_ts] + \
               [ConeVertex("B", t, self.s_of(t)) for t in self.b_ts]

    def offset(self, segment: str, t: int, gen: Generator) -> int:
        if segment == "B":
            return 0
        shift = max(Fraction(0), gen.alexander - self.s_of(t))
        assert shift.denominator == 1
        return int(shift)

    # -- Maslov bookkeeping -------------------------------------------------

    def phi(self) -> Mapping[tuple[str, int], Fraction]:
        """Per-vertex Maslov shift making every cone edge drop the grading by 1.

        For q = 1 these are the absolute dual-knot grading corrections for
        framing n = p; for q > 1 no absolute formula is used and the shifts
        are anchored per Spin^c sector (relative gradings).
        """
        if self._phi is not None:
            return self._phi
        shifts: dict[tuple[str, int], Fraction] = {}
        if self.q == 1:
            n = self.p
            sign = 1 if n > 0 else -1
            for t in self.a_ts:
                shifts[("A", t)] = Fraction((2 * t - n) ** 2, 4 * n) + Fraction(2 - 3 * sign, 4)
            for t in self.b_ts:
                shifts[("B", t)] = Fraction((2 * t - n) ** 2, 4 * n) + Fraction(-2 - 3 * sign, 4)
        else:
            # window-independent solution of the relations
            #   phi(B,t) = phi(A,t) - 1,  phi(B,t+p) = phi(A,t) - 1 + 2*s(t),
            # anchored at phi(A, t mod |p|) = 0 so that different t-windows
            # of the same cone carry identical (relative) gradings.
            def phi_a(t: int) -> Fraction:
                i0 = t % abs(self.p)
                j = (t - i0) // self.p
                if j >= 0:
                    return Fraction(2 * sum(self.s_of(i0 + m * self.p) for m in range(j)))
                return Fraction(-2 * sum(self.s_of(i0 + m * self.p) for m in range(j, 0)))

            for t in self.a_ts:
                shifts[("A", t)] = phi_a(t)
            for t in self.b_ts:
                shifts[("B", t)] = phi_a(t) - 1
        self._phi = shifts
        return shifts

    # -- assembly -----------------------------------------------------------

    @staticmethod
    def element_name(segment: str, t: int, base: str) -> str:
        return f"{segment}{t}.{base}"

    def total_complex(self, sector: int | None = None,
                      alexander_fn: Callable[[str, int, Generator, int], Fraction] | None = None,
                      ) -> tuple[FilteredComplex, dict[str, ElementInfo]]:
        """Flatten the cone (or one Spin^c sector) to a single complex.

        alexander_fn assigns the Alexander field of each element (the dual
        construction passes its second filtration); plain cones use 0, so
        the j-filtration bookkeeping degenerates and only the U-power
        (the I-drop) constrains the differential.
        """
        phi = self.phi()
        gens: list[Generator] = []
        table: dict[str, ElementInfo] = {}
        diff: dict[str, dict[str, int]] = {}

        def wanted(t: int) -> bool:
            return sector is None or self.spin_c(t) == sector

        def add_vertex(segment: str, t: int) -> None:
            s = self.s_of(t)
            for g in self.source.generators:
                off = self.offset(segment, t, g)
                name = self.element_name(segment, t, g.name)
                alex = Fraction(0) if alexander_fn is None else alexander_fn(segment, t, g, off)
                gens.append(Generator(name, alex, g.maslov - 2 * off + phi[(segment, t)]))
                table[name] = ElementInfo(segment, t, s, g.name, off)

        for t in self.a_ts:
            if wanted(t):
                add_vertex("A", t)
        for t in self.b_ts:
            if wanted(t):
                add_vertex("B", t)

        def put(src: str, tgt: str, power: Fraction | int) -> None:
            power = Fraction(power)
            assert power.denominator == 1 and power >= 0, "cone entry with illegal power"
            diff.setdefault(src, {})[tgt] = int(power)

        for t in self.a_ts:
            if not wanted(t):
                continue
            s = self.s_of(t)
            for g in self.source.generators:
                src = self.element_name("A", t, g.name)
                off = self.offset("A", t, g)
                for tgt_base, k in self.source.differential.get(g.name, {}).items():
                    off_t = self.offset("A", t, self.source.generator(tgt_base))
                    put(src, self.element_name("A", t, tgt_base), k + off - off_t)
                if t in self._b_set:
                    put(src, self.element_name("B", t, g.name), off)
                if t + self.p in self._b_set:
                    partner, fpow = self.flip(g.name)
                    put(src, self.element_name("B", t + self.p, partner), s + fpow + off)
        for t in self.b_ts:
            if not wanted(t):
                continue
            for g in self.source.generators:
                src = self.element_name("B", t, g.name)
                for tgt_base, k in self.source.differential.get(g.name, {}).items():
                    put(src, self.element_name("B", t, tgt_base), k)
        return FilteredComplex(gens, diff), table

    def hat_complex(self, sector: int | None = None) -> tuple[FilteredComplex, dict[str, ElementInfo]]:
        """The I = 0 part: same elements, only the U-power-0 entries."""
        total, table = self.total_complex(sector)
        diff = {s: {t: k for t, k in row.items() if k == 0}
                for s, row in total.differential.items()}
        return FilteredComplex(total.generators, diff), table

    def hat(self, sector: int | None = None) -> "HatCone":
        complex_, table = self.hat_complex(sector)
        return HatCone(self, sector, complex_, table)

    # -- derived quantities ---------------------------------------------------

    def sector_homology(self, sector: int, flavor: str = "hat") -> GradedRanks:
        if flavor == "hat":
            ranks = homology(self.hat_complex(sector)[0], ("maslov",))
            assert not ranks.torsion
            return ranks
        if flavor == "infinity":
            total, _ = self.total_complex(sector)
            survivors = reduce(total, "full_field").complex.generators
            ranks: dict[tuple, int] = {}
            for g in survivors:
                key = grading_key(g, ("maslov_parity",))
                ranks[key] = ranks.get(key, 0) + 1
            return GradedRanks(ranks)
        raise BadCoefficients(f"unknown flavor {flavor!r}")

    def all_sector_ranks(self, flavor: str = "hat") -> dict[int, int]:
        return {i: self.sector_homology(i, flavor).total_rank for i in self.sectors}

    # -- truncation -------------------------------------------------------------

    def truncate(self) -> "MappingCone":
        """Shrink to the minimal window after verifying the dropped vertices cancel.

        Every dropped A-vertex must have v (s >= genus) or h (s <= -genus)
        a bijection on hat elements; afterwards equality of all sector hat
        ranks is checked outright.
        """
        target = MappingCone.build(self.source, self.flip, self.p, self.q, "paper")
        if set(target.a_ts) == set(self.a_ts) and set(target.b_ts) == set(self._b_set):
            return self
        if not (set(target.a_ts) <= set(self.a_ts) and set(target.b_ts) <= self._b_set):
            raise NotTruncatable("cone is smaller than the minimal window")
        g = self.genus
        alex = [gen.alexander for gen in self.source.generators]
        lo_a, hi_a = min(alex), max(alex)
        for t in self.a_ts:
            if t in target.a_ts:
                continue
            s = self.s_of(t)
            if s >= g:
                # v is a bijection iff no element needs a positive offset
                if hi_a > s or t not in self._b_set:
                    raise NotTruncatable(f"v at t={t} (s={s}) is not an isomorphism")
            elif s <= -g:
                if lo_a < s or (t + self.p) not in self._b_set:
                    raise NotTruncatable(f"h at t={t} (s={s}) is not an isomorphism")
            else:
                raise NotTruncatable(f"dropped vertex t={t} has |s| < genus")
        for i in self.sectors:
            if self.sector_homology(i) != target.sector_homology(i):
                raise NotTruncatable(f"sector {i} homology changed under truncation")
        return target


@dataclass
class HatCone:
    """The I = 0 part of a mapping cone, one Spin^c sector or all of them."""

    cone: MappingCone
    sector: int | None
    complex: FilteredComplex
    elements: dict[str, ElementInfo]

    def vertex_elements(self, segment: str, t: int) -> list[str]:
        return [n for n, info in self.elements.items()
                if info.segment == segment and info.t == t]

    def sector_complex(self, i: int) -> FilteredComplex:
        names = [n for n, info in self.elements.items()
                 if self.cone.spin_c(info.t) == i]
        return self.complex.with_generators(names)


def build_cone(c: FilteredComplex, flip: FlipMap, p: int, q: int,
               range_mode: str = "paper") -> MappingCone:
    """Assemble the surgery mapping cone for p/q surgery on the model c."""
    return MappingCone.build(c, flip, p, q, range_mode)


def hat(cone: MappingCone, sector: int | None = None) -> HatCone:
    """The I = 0 part of a cone, with its element bookkeeping."""
    return cone.hat(sector)


def sector_homology(cone, i: int, flavor: str = "hat") -> GradedRanks:
    """Homology ranks of one Spin^c sector of a cone or of its hat part."""
    if isinstance(cone, HatCone):
        ranks = homology(cone.sector_complex(i), ("maslov",))
        assert not ranks.torsion
        return ranks
    return cone.sector_homology(i, flavor)


def hat_map_is_quasi_iso(c: FilteredComplex, flip: FlipMap, s: int, kind: str) -> bool:
    """Whether the hat v- or h-map out of A_s kills all homology in its cone."""
    if kind == "v":
        cone = MappingCone(c, flip, 1, 1, [s], [s])
    elif kind == "h":
        cone = MappingCone(c, flip, 1, 1, [s], [s + 1])
    else:
        raise BadCoefficients(f"kind must be 'v' or 'h', got {kind!r}")
    hat, _ = cone.hat_complex()
    return homology(hat, ("maslov",)).total_rank == 0


@dataclass
class IncludeBReport:
    t: int
    sector: int
    matrix: list[list[int]]  # rows: sector homology basis, cols: vertex homology basis
    domain_rank: int
    codomain_rank: int
    map_rank: int
    kernel: list[dict[str, int]]

    @property
    def injective(self) -> bool:
        return self.map_rank == self.domain_rank

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.domain_rank == self.codomain_rank


def include_B(cone, t: int) -> IncludeBReport:
    """Induced map on hat homology of the inclusion of vertex (t, B) in its sector."""
    if isinstance(cone, HatCone):
        cone = cone.cone
    if t not in cone._b_set:
        raise NoSuchVertex(f"no vertex (B, {t}) in this cone")
    sector = cone.spin_c(t)
    hat, table = cone.hat_complex(sector)
    sub_names = [n for n, info in table.items() if info.segment == "B" and info.t == t]
    vertex_cx = hat.with_generators(sub_names)
    rf_vertex = reduce(vertex_cx, "over_U_units")
    rf_sector = reduce(hat, "over_U_units")
    cod = [g.name for g in rf_sector.complex.generators]
    cod_index = {n: i for i, n in enumerate(cod)}
    columns = []
    cycles = []
    for b in rf_vertex.complex.generators:
        cycle = rf_vertex.pull({b.name: 0})
        cycles.append(cycle)
        image = rf_sector.push(cycle)
        bits = 0
        for name in image:
            bits |= 1 << cod_index[name]
        columns.append(bits)
    map_rank, kernel_masks = gf2.column_reduce(columns)
    kernel = []
    for mask in kernel_masks:
        chain: dict[str, int] = {}
        for j, cyc in enumerate(cycles):
            if mask >> j & 1:
                for name, power in cyc.items():
                    if name in chain:
                        del chain[name]
                    else:
                        chain[name] = power
        kernel.append(chain)
    matrix = [[columns[j] >> i & 1 for j in range(len(columns))] for i in range(len(cod))]
    return IncludeBReport(
        t=t,
        sector=sector,
        matrix=matrix,
        domain_rank=len(columns),
        codomain_rank=len(cod),
        map_rank=map_rank,
        kernel=kernel,
    )
