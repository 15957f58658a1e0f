"""Exact filtered chain complexes over GF(2)[U] and their reduction engine.

A complex here is finitely generated and free over GF(2)[U].  Each
generator is stored once, through the translate of its (i,j)-plane orbit
sitting at i = 0, and carries an Alexander grading A (the j-coordinate of
that translate, equivalently j - i of any translate) and a Maslov grading.
The translate U^k g then sits at (-k, A-k) with Maslov maslov(g) - 2k.

Every differential entry is a single monomial: d(g) contains U^k h with
k >= 0, where gradedness pins k = (maslov(h) - maslov(g) + 1) / 2.  For a
valid complex each entry drops i by k >= 0 and j by
alexander(g) - alexander(h) + k >= 0, and drops Maslov by exactly 1.

All reductions are sequences of two elementary moves that preserve
d^2 = 0 and gradedness:

* a graded change of basis  u := u + U^m v  (same Maslov after the shift),
* removal of an isolated two-generator summand  d(e) = U^c f.

The same loop, parameterized by which entries may serve as pivots, gives
filtered reduction (c = 0 and equal Alexander gradings), reduction up to
unfiltered GF(2)[U]-homotopy equivalence (c = 0), reduction over the
Laurent ring (any c), and Smith normal form over GF(2)[U] (minimal c
first, recording U-torsion), which is how homology is computed.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import BadParameter, NoUnitEntry

Chain = dict[str, int]  # generator name -> U-power, GF(2) coefficients implicit
DiffMap = dict[str, dict[str, int]]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Generator:
    """A free GF(2)[U]-generator with its bigrading."""

    name: str
    alexander: Fraction
    maslov: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alexander", _frac(self.alexander))
        object.__setattr__(self, "maslov", _frac(self.maslov))


class FilteredComplex:
    """Immutable-by-convention complex; operations return new values."""

    def __init__(self, generators: Sequence[Generator], differential: Mapping[str, Mapping[str, int]]):
        self.generators: tuple[Generator, ...] = tuple(generators)
        self._by_name = {g.name: g for g in self.generators}
        if len(self._by_name) != len(self.generators):
            raise BadParameter("duplicate generator names")
        self._order = {g.name: i for i, g in enumerate(self.generators)}
        diff: DiffMap = {}
        for src, row in differential.items():
            row = {tgt: int(k) for tgt, k in row.items()}
            if row:
                diff[src] = dict(sorted(row.items(), key=lambda it: self._order.get(it[0], -1)))
        self.differential: DiffMap = diff

    # -- queries ---------------------------------------------------------

    def generator(self, name: str) -> Generator:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.generators)

    def order(self, name: str) -> int:
        return self._order[name]

    def entries(self) -> Iterator[tuple[str, str, int]]:
        for src in self.differential:
            for tgt, k in self.differential[src].items():
                yield src, tgt, k

    def row(self, src: str) -> dict[str, int]:
        return dict(self.differential.get(src, {}))

    def j_drop(self, src: str, tgt: str, k: int) -> Fraction:
        return self._by_name[src].alexander - self._by_name[tgt].alexander + k

    def boundary(self, chain: Chain) -> Chain:
        """d of a GF(2)[U]-chain given as {name: power}."""
        out: Chain = {}
        for name, power in chain.items():
            for tgt, k in self.differential.get(name, {}).items():
                _toggle(out, tgt, power + k)
        return out

    def with_generators(self, names: Iterable[str]) -> "FilteredComplex":
        """Full subcomplex on a subset of generators (entries inside it)."""
        keep = set(names)
        gens = [g for g in self.generators if g.name in keep]
        diff = {
            s: {t: k for t, k in row.items() if t in keep}
            for s, row in self.differential.items()
            if s in keep
        }
        return FilteredComplex(gens, diff)


def _toggle(row: dict[str, int], key: str, power: int) -> None:
    # GF(2): inserting an existing monomial cancels it.  Gradedness means a
    # (source, target) pair admits a single power, which we assert.
    if key in row:
        if row[key] != power:
            raise AssertionError(f"non-graded toggle on {key}: {row[key]} vs {power}")
        del row[key]
    else:
        row[key] = power


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.violations)


def check_complex(c: FilteredComplex, laurent: bool = False) -> ValidationReport:
    """Diagnostic check of every structural invariant; empty report iff valid.

    With laurent=True negative U-powers are allowed (used transiently after
    reductions over GF(2)[U,U^-1]); filtration checks are skipped for them.
    """
    bad: list[str] = []
    for src, tgt, k in c.entries():
        if tgt not in c:
            bad.append(f"entry {src} -> {tgt}: unknown target")
            continue
        g, h = c.generator(src), c.generator(tgt)
        if k < 0 and not laurent:
            bad.append(f"entry {src} -> U^{k} {tgt}: negative power")
        if h.maslov - 2 * k != g.maslov - 1:
            bad.append(f"entry {src} -> U^{k} {tgt}: Maslov drop is not 1")
        if not laurent:
            jd = c.j_drop(src, tgt, k)
            if jd < 0:
                bad.append(f"entry {src} -> U^{k} {tgt}: raises j-filtration by {-jd}")
    for src in c.differential:
        if src not in c:
            bad.append(f"differential row for unknown generator {src}")
    for src in c.differential:
        if src not in c:
            continue
        square: dict[tuple[str, int], int] = {}
        for tgt, k in c.differential[src].items():
            if tgt not in c:
                continue
            for tgt2, k2 in c.differential.get(tgt, {}).items():
                key = (tgt2, k + k2)
                square[key] = square.get(key, 0) ^ 1
        for (tgt2, power), parity in square.items():
            if parity:
                bad.append(f"d^2({src}) contains U^{power} {tgt2}")
    return ValidationReport(tuple(bad))


def require_valid(c: FilteredComplex) -> None:
    report = check_complex(c)
    if not report.ok:
        raise BadParameter("invalid complex:\n" + str(report))


# -- reduction engine ------------------------------------------------------


class ReducedForm:
    """A reduced complex plus the invertible trace back to the input.

    project sends input chains to reduced-basis chains, include goes back;
    project . include is the identity on the nose, include . project is
    chain homotopic to the identity, so homology classes round-trip.
    """

    def __init__(self, source: FilteredComplex, complex: FilteredComplex,
                 project: DiffMap, include: DiffMap):
        self.source = source
        self.complex = complex
        self.project = project
        self.include = include

    def push(self, chain: Chain) -> Chain:
        return apply_map(self.project, chain)

    def pull(self, chain: Chain) -> Chain:
        return apply_map(self.include, chain)


def apply_map(m: DiffMap, chain: Chain) -> Chain:
    out: Chain = {}
    for name, power in chain.items():
        for tgt, k in m.get(name, {}).items():
            _toggle(out, tgt, power + k)
    return out


def compose_maps(outer: DiffMap, inner: DiffMap) -> DiffMap:
    out: DiffMap = {}
    for src, row in inner.items():
        image = apply_map(outer, row)
        if image:
            out[src] = image
    return out


class _Reduction:
    """Mutable working state for the elimination loop."""

    def __init__(self, c: FilteredComplex):
        self.c = c
        self.gens: dict[str, Generator] = {g.name: g for g in c.generators}
        self.order = dict(c._order)
        self.diff: DiffMap = {s: dict(r) for s, r in c.differential.items()}
        self.sources: dict[str, set[str]] = {}
        for s, row in self.diff.items():
            for t in row:
                self.sources.setdefault(t, set()).add(s)
        names = list(self.gens)
        self.project: DiffMap = {n: {n: 0} for n in names}
        self.include: DiffMap = {n: {n: 0} for n in names}
        self.torsion: list[tuple[str, int]] = []  # (target name, order) per pivot

    # elementary moves ----------------------------------------------------

    def _set(self, src: str, tgt: str, power: int) -> None:
        row = self.diff.setdefault(src, {})
        _toggle(row, tgt, power)
        if tgt in row:
            self.sources.setdefault(tgt, set()).add(src)
        else:
            self.sources.get(tgt, set()).discard(src)
            if not row:
                del self.diff[src]

    def basis_change(self, u: str, v: str, m: int) -> None:
        """Replace u by u + U^m v (GF(2), so it is its own inverse)."""
        assert u != v
        for tgt, k in list(self.diff.get(v, {}).items()):
            self._set(u, tgt, k + m)
        for s in list(self.sources.get(u, set())):
            self._set(s, v, self.diff[s][u] + m)
        # trace: old u reads u + U^m v in the new basis; new u includes as u + U^m v
        for name, row in self.project.items():
            if u in row:
                _toggle(row, v, row[u] + m)
        inc_u = self.include.get(u, {})
        for tgt, k in self.include.get(v, {}).items():
            _toggle(inc_u, tgt, k + m)
        self.include[u] = inc_u

    def remove_pair(self, e: str, f: str) -> int:
        """Drop an isolated summand d(e) = U^c f; returns c."""
        row = self.diff.get(e, {})
        assert set(row) == {f}, "row of e not cleared"
        assert self.sources.get(f, set()) == {e}, "column of f not cleared"
        assert not self.sources.get(e), "unexpected entries into e"
        assert not self.diff.get(f), "unexpected entries out of f"
        c = row[f]
        del self.diff[e]
        self.sources.pop(f, None)
        self.sources.pop(e, None)
        for name in (e, f):
            del self.gens[name]
            self.include.pop(name, None)
        for name, prow in self.project.items():
            prow.pop(e, None)
            prow.pop(f, None)
        return c

    def cancel(self, e: str, f: str) -> int:
        """Clear row e / column f against the pivot entry, then remove the pair."""
        c = self.diff[e][f]
        for s in list(self.sources.get(f, set())):
            if s != e:
                self.basis_change(s, e, self.diff[s][f] - c)
        for h, d in list(self.diff.get(e, {}).items()):
            if h != f:
                self.basis_change(f, h, d - c)
        return self.remove_pair(e, f)

    # pivot scans ----------------------------------------------------------

    def iter_entries(self) -> Iterator[tuple[str, str, int]]:
        for src in sorted(self.diff, key=self.order.__getitem__):
            for tgt in sorted(self.diff[src], key=self.order.__getitem__):
                yield src, tgt, self.diff[src][tgt]

    def find_pivot(self, accept: Callable[[str, str, int], bool],
                   rng: random.Random | None = None) -> tuple[str, str, int] | None:
        found = [(s, t, k) for s, t, k in self.iter_entries() if accept(s, t, k)]
        if not found:
            return None
        if rng is not None:
            return found[rng.randrange(len(found))]
        return found[0]

    def snapshot(self) -> FilteredComplex:
        gens = [g for g in self.c.generators if g.name in self.gens]
        return FilteredComplex(gens, {s: dict(r) for s, r in self.diff.items()})

    def finish(self) -> ReducedForm:
        return ReducedForm(self.c, self.snapshot(), self.project, self.include)

    def j_drop(self, src: str, tgt: str, k: int) -> Fraction:
        return self.gens[src].alexander - self.gens[tgt].alexander + k


def cancel_pair(c: FilteredComplex, source: str, target: str) -> ReducedForm:
    """Cancel one differential entry source -> U^0 target (a GF(2)[U] unit)."""
    k = c.differential.get(source, {}).get(target)
    if k is None or k != 0:
        raise NoUnitEntry(f"no unit differential entry {source} -> {target}")
    state = _Reduction(c)
    state.cancel(source, target)
    return state.finish()


REDUCE_MODES = ("filtered", "over_U_units", "full_field")


def reduce(c: FilteredComplex, mode: str = "filtered",
           rng: random.Random | None = None) -> ReducedForm:
    """Iterated cancellation in one of three regimes.

    filtered      cancels only U^0 entries between equal (i,j)-positions, so
                  the result is filtered chain homotopy equivalent to c;
    over_U_units  cancels every U^0 entry (homotopy equivalence over GF(2)[U]);
    full_field    inverts U and cancels everything, leaving zero differential
                  (homotopy equivalence over GF(2)[U,U^-1]).

    The default pivot is the first unit entry in generator order; rng is a
    hook for the randomized-order confluence property tests only.
    """
    if mode not in REDUCE_MODES:
        raise BadParameter(f"unknown reduce mode {mode!r}")
    state = _Reduction(c)
    if mode == "filtered":
        accept = lambda s, t, k: k == 0 and state.j_drop(s, t, 0) == 0
    elif mode == "over_U_units":
        accept = lambda s, t, k: k == 0
    else:
        accept = lambda s, t, k: True
    while True:
        pivot = state.find_pivot(accept, rng)
        if pivot is None:
            return state.finish()
        state.cancel(*pivot[:2])


# -- homology --------------------------------------------------------------


@dataclass(frozen=True)
class GradedRanks:
    """Free ranks and U-torsion orders of homology, keyed by grading tuples."""

    ranks: Mapping[tuple, int]
    torsion: Mapping[tuple, tuple[int, ...]] = field(default_factory=dict)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    @property
    def total_torsion(self) -> int:
        return sum(len(v) for v in self.torsion.values())

    def rank(self, *key) -> int:
        return self.ranks.get(tuple(_plain(k) for k in key), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedRanks):
            return NotImplemented
        return dict(self.ranks) == dict(other.ranks) and dict(self.torsion) == dict(other.torsion)

    def __hash__(self):
        return hash((frozenset(self.ranks.items()), frozenset(self.torsion.items())))


def _plain(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def grading_key(g: Generator, keys: Sequence[str]) -> tuple:
    parts = []
    for k in keys:
        if k == "alexander":
            parts.append(_plain(g.alexander))
        elif k == "maslov":
            parts.append(_plain(g.maslov))
        elif k == "maslov_parity":
            parts.append(_plain(g.maslov - 2 * (g.maslov / 2).__floor__()))
        else:
            raise BadParameter(f"unknown grading key {k!r}")
    return tuple(parts)


def homology(c: FilteredComplex, keys: Sequence[str] = ("alexander", "maslov")) -> GradedRanks:
    """Homology of c as a GF(2)[U]-module via graded Smith normal form.

    Ranks count free GF(2)[U] summands, the torsion table lists U-powers of
    GF(2)[U]/U^k summands, both keyed by the selected gradings of their
    generating class.  Basis independent; pivots take minimal U-power first
    so all elimination stays inside the polynomial ring.
    """
    state = _Reduction(c)
    while True:
        entries = list(state.iter_entries())
        if not entries:
            break
        c_min = min(k for _, _, k in entries)
        pivot = next((s, t, k) for s, t, k in entries if k == c_min)
        order = state.cancel(pivot[0], pivot[1])
        if order > 0:
            state.torsion.append((pivot[1], order))
    ranks: dict[tuple, int] = {}
    for g in state.snapshot().generators:
        key = grading_key(g, keys)
        ranks[key] = ranks.get(key, 0) + 1
    torsion: dict[tuple, list[int]] = {}
    for name, order in state.torsion:
        key = grading_key(c.generator(name), keys)
        torsion.setdefault(key, []).append(order)
    return GradedRanks(ranks, {k: tuple(sorted(v)) for k, v in torsion.items()})


# -- graded slices ---------------------------------------------------------


def hat_slice(c: FilteredComplex) -> FilteredComplex:
    """The i-preserving part of d (U-power-0 entries); the i = 0 column."""
    diff = {s: {t: k for t, k in row.items() if k == 0} for s, row in c.differential.items()}
    return FilteredComplex(c.generators, diff)


def bigraded_slice(c: FilteredComplex) -> FilteredComplex:
    """Entries preserving both filtrations; computes hat-flavor knot homology."""
    diff = {
        s: {t: k for t, k in row.items() if k == 0 and c.j_drop(s, t, k) == 0}
        for s, row in c.differential.items()
    }
    return FilteredComplex(c.generators, diff)


def j_graded(c: FilteredComplex) -> FilteredComplex:
    """The j-preserving (Alexander-associated-graded) part of d."""
    diff = {
        s: {t: k for t, k in row.items() if c.j_drop(s, t, k) == 0}
        for s, row in c.differential.items()
    }
    return FilteredComplex(c.generators, diff)


# -- randomized property-test helper ----------------------------------------


def default_seed() -> int:
    return int(os.environ.get("FLOERCONE_SEED", "20260810"))


def random_filtered_complex(rng: random.Random, n_free: int = 3, n_pairs: int = 3,
                            moves: int = 25) -> tuple[FilteredComplex, GradedRanks]:
    """A random valid complex with known GF(2)[U]-homology.

    Starts from a direct sum of free generators and U^k two-step summands,
    then scrambles it with random graded, filtration-legal changes of basis
    (which leave homology alone).  The returned GradedRanks is keyed by
    Maslov grading only: Alexander labels of homology classes are a
    filtration-level bookkeeping that basis changes may legitimately move
    (they are canonical only on j-graded complexes).
    """
    gens: list[Generator] = []
    diff: DiffMap = {}
    ranks: dict[tuple, int] = {}
    torsion: dict[tuple, list[int]] = {}
    for i in range(n_free):
        a, m = rng.randint(-2, 2), rng.randint(-3, 3)
        gens.append(Generator(f"f{i}", a, m))
        key = (m,)
        ranks[key] = ranks.get(key, 0) + 1
    for i in range(n_pairs):
        a, m = rng.randint(-2, 2), rng.randint(-3, 3)
        k = rng.randint(0, 2)
        jd = rng.randint(0, 2)
        # pair e -> U^k f with chosen i-drop k and j-drop jd
        f = Generator(f"p{i}", a, m)
        e = Generator(f"q{i}", a - k + jd, m - 2 * k + 1)
        gens += [f, e]
        diff[e.name] = {f.name: k}
        if k > 0:
            key = (m,)
            torsion.setdefault(key, []).append(k)
    by_name = {g.name: g for g in gens}
    state = _Reduction(FilteredComplex(gens, diff))
    names = [g.name for g in gens]
    for _ in range(moves):
        u, v = rng.sample(names, 2)
        gu, gv = by_name[u], by_name[v]
        two_m = gv.maslov - gu.maslov
        if two_m % 2 != 0:
            continue
        m = int(two_m // 2)
        if m < 0:
            continue
        if gv.alexander - m > gu.alexander:
            continue
        state.basis_change(u, v, m)
    scrambled = FilteredComplex(gens, {s: dict(r) for s, r in state.diff.items()})
    expected = GradedRanks(ranks, {k: tuple(sorted(v)) for k, v in torsion.items()})
    return scrambled, expected
