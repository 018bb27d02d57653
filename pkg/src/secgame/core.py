"""Security-game model: payoffs, schedules, pure/mixed strategies and utilities.

All numbers are :class:`fractions.Fraction`.  Targets are 0-based indices.
A coverage vector is a tuple of 0/1 ints; an attack vector is a sorted tuple
of ``L`` distinct target indices (``(i,)`` when the attacker has one
resource).
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, InvalidGame

ZERO = Fraction(0)
ONE = Fraction(1)

COVERAGE_CAP = 10**6
ATTACK_CAP = 10**5


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, float):
        # floats only enter through hand-written literals such as .5
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class TargetPayoffs:
    dc: Fraction   # defender, target covered
    du: Fraction   # defender, target uncovered
    ac: Fraction   # attacker, target covered
    au: Fraction   # attacker, target uncovered
    name: str = ""

    def __post_init__(self):
        for attr in ("dc", "du", "ac", "au"):
            object.__setattr__(self, attr, as_rational(getattr(self, attr)))
        if self.dc - self.du <= 0:
            raise InvalidGame(f"target {self.name or '?'}: covering must help the defender")
        if self.au - self.ac <= 0:
            raise InvalidGame(f"target {self.name or '?'}: covering must hurt the attacker")

    @property
    def delta_d(self) -> Fraction:
        return self.dc - self.du

    @property
    def delta_a(self) -> Fraction:
        return self.au - self.ac


def _norm_schedules(schedules, n):
    out = []
    seen = set()
    for s in schedules:
        fs = frozenset(int(t) for t in s)
        for t in fs:
            if not 0 <= t < n:
                raise InvalidGame(f"schedule {sorted(fs)} references target {t} outside 0..{n - 1}")
        if fs not in seen:
            seen.add(fs)
            out.append(fs)
    return tuple(out)


@dataclass(frozen=True)
class SecurityGame:
    """Targets, per-resource schedule sets and the attacker's resource count."""

    targets: tuple
    resources: tuple
    attacker_resources: int = 1

    def __post_init__(self):
        targets = tuple(t if isinstance(t, TargetPayoffs) else TargetPayoffs(*t)
                        for t in self.targets)
        targets = tuple(t if t.name else replace(t, name=f"t{i + 1}")
                        for i, t in enumerate(targets))
        object.__setattr__(self, "targets", targets)
        n = len(targets)
        if n < 1:
            raise InvalidGame("a game needs at least one target")
        resources = tuple(_norm_schedules(s, n) for s in self.resources)
        object.__setattr__(self, "resources", resources)
        if len(resources) < 1:
            raise InvalidGame("a game needs at least one defender resource")
        for i, sched in enumerate(resources):
            if not sched:
                raise InvalidGame(f"resource {i} has no schedules")
        L = self.attacker_resources
        if not isinstance(L, int) or L < 1 or L > n:
            raise InvalidGame(f"attacker resources must be in 1..{n}, got {L!r}")
        if L > 1:
            if any(len(s) > 1 for sched in resources for s in sched):
                raise InvalidGame("multiple attacker resources require schedules of size <= 1")
            first = set(resources[0])
            if any(set(sched) != first for sched in resources[1:]):
                raise InvalidGame("multiple attacker resources require homogeneous resources")

    @classmethod
    def homogeneous(cls, targets, schedules, n_resources, attacker_resources=1):
        sched = tuple(schedules)
        return cls(tuple(targets), (sched,) * n_resources, attacker_resources)

    @classmethod
    def singletons(cls, targets, n_resources=1, attacker_resources=1, include_empty=True):
        """Homogeneous resources that can cover any single target."""
        targets = tuple(targets)
        sched = [(i,) for i in range(len(targets))]
        if include_empty:
            sched.append(())
        return cls.homogeneous(targets, sched, n_resources, attacker_resources)

    @property
    def n(self) -> int:
        return len(self.targets)

    @property
    def K(self) -> int:
        return len(self.resources)

    @property
    def L(self) -> int:
        return self.attacker_resources

    def with_attacker_resources(self, L) -> "SecurityGame":
        return SecurityGame(self.targets, self.resources, L)

    def with_targets(self, targets) -> "SecurityGame":
        return SecurityGame(tuple(targets), self.resources, self.attacker_resources)

    @property
    def is_homogeneous(self) -> bool:
        first = set(self.resources[0])
        return all(set(s) == first for s in self.resources[1:])

    @property
    def is_zero_sum(self) -> bool:
        return all(t.dc == -t.ac and t.du == -t.au for t in self.targets)


# ---------------------------------------------------------------------------
# pure strategies


def enumerate_coverage_vectors(game: SecurityGame, cap: int = COVERAGE_CAP) -> tuple:
    """Feasible coverage vectors D, deduplicated and sorted."""
    return _coverage_vectors(game, cap)


@functools.lru_cache(maxsize=256)
def _coverage_vectors(game, cap):
    size = math.prod(len(s) for s in game.resources)
    if size > cap:
        raise CapExceeded(f"{size} resource assignments exceed the cap of {cap}")
    n = game.n
    masks = set()
    if game.is_homogeneous:
        scheds = [sum(1 << t for t in s) for s in game.resources[0]]
        assignments = itertools.combinations_with_replacement(scheds, game.K)
    else:
        per = [[sum(1 << t for t in s) for s in sched] for sched in game.resources]
        assignments = itertools.product(*per)
    for combo in assignments:
        m = 0
        for s in combo:
            m |= s
        masks.add(m)
    return tuple(sorted(tuple((m >> i) & 1 for i in range(n)) for m in masks))


def enumerate_attack_vectors(game: SecurityGame, cap: int = ATTACK_CAP) -> tuple:
    """Attacker pure strategies Q in lexicographic order."""
    count = math.comb(game.n, game.L)
    if count > cap:
        raise CapExceeded(f"{count} attack vectors exceed the cap of {cap}")
    return tuple(itertools.combinations(range(game.n), game.L))


def check_ssas(game: SecurityGame) -> bool:
    """True iff every subset of every schedule of a resource is also one of its schedules."""
    for sched in game.resources:
        have = set(sched)
        for s in sched:
            for k in range(len(s)):
                for sub in itertools.combinations(sorted(s), k):
                    if frozenset(sub) not in have:
                        return False
    return True


def subset_closure(game: SecurityGame) -> SecurityGame:
    """The same game with every subschedule added to every schedule set."""
    closed = []
    for sched in game.resources:
        subs = []
        for s in sched:
            for k in range(len(s) + 1):
                subs.extend(frozenset(c) for c in itertools.combinations(sorted(s), k))
        closed.append(tuple(sorted(set(subs), key=lambda f: (len(f), sorted(f)))))
    return SecurityGame(game.targets, tuple(closed), game.attacker_resources)


# ---------------------------------------------------------------------------
# mixed strategies


def _clean(dist: Mapping, what: str) -> dict:
    out = {}
    for k, p in dist.items():
        p = as_rational(p)
        if p < 0:
            raise ValueError(f"{what}: negative probability {p} on {k}")
        if p:
            out[tuple(k)] = out.get(tuple(k), ZERO) + p
    total = sum(out.values(), ZERO)
    if total != 1:
        raise ValueError(f"{what}: probabilities sum to {total}, not 1")
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=True)
class DefenderMixedStrategy:
    """Distribution over coverage vectors."""

    support: Mapping = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "support", _clean(self.support, "defender strategy"))

    @classmethod
    def pure(cls, d) -> "DefenderMixedStrategy":
        return cls({tuple(int(b) for b in d): ONE})

    @property
    def n(self) -> int:
        return len(next(iter(self.support)))

    def marginals(self) -> tuple:
        n = self.n
        c = [ZERO] * n
        for d, p in self.support.items():
            for i in range(n):
                if d[i]:
                    c[i] += p
        return tuple(c)

    def as_mixture(self, other: "DefenderMixedStrategy", alpha) -> "DefenderMixedStrategy":
        alpha = as_rational(alpha)
        out = {}
        for d, p in self.support.items():
            out[d] = out.get(d, ZERO) + alpha * p
        for d, p in other.support.items():
            out[d] = out.get(d, ZERO) + (1 - alpha) * p
        return DefenderMixedStrategy(out)


@dataclass(frozen=True, eq=True)
class AttackerMixedStrategy:
    """Distribution over attack vectors (tuples of ``L`` target indices)."""

    probs: Mapping = field(hash=False)

    def __post_init__(self):
        cleaned = _clean({tuple(sorted(k)): p for k, p in self.probs.items()},
                         "attacker strategy")
        sizes = {len(q) for q in cleaned}
        if len(sizes) != 1:
            raise ValueError("attack vectors must all have the same size")
        for q in cleaned:
            if len(set(q)) != len(q):
                raise ValueError(f"attack vector {q} repeats a target")
        object.__setattr__(self, "probs", cleaned)

    @classmethod
    def from_targets(cls, a) -> "AttackerMixedStrategy":
        """Single-resource strategy from a vector of per-target probabilities."""
        return cls({(i,): as_rational(p) for i, p in enumerate(a) if as_rational(p)})

    @classmethod
    def pure(cls, q) -> "AttackerMixedStrategy":
        if isinstance(q, int):
            q = (q,)
        return cls({tuple(q): ONE})

    @classmethod
    def from_marginals(cls, marginals, L) -> "AttackerMixedStrategy":
        """Distribution over L-subsets with the given per-target attack probabilities."""
        return cls(systematic_decomposition(marginals, L))

    @property
    def L(self) -> int:
        return len(next(iter(self.probs)))

    def target_probs(self, n) -> tuple:
        a = [ZERO] * n
        for q, p in self.probs.items():
            for i in q:
                a[i] += p
        return tuple(a)


def systematic_decomposition(marginals, size) -> dict:
    """Split inclusion probabilities into a distribution over ``size``-subsets.

    Lays the marginals end to end on ``[0, size)`` and reads off, for each
    offset ``u`` in ``[0, 1)``, the items hit by ``u, u+1, ..., u+size-1``.
    Exact and deterministic; requires ``0 <= m_i <= 1`` and ``sum(m) == size``.
    """
    m = [as_rational(v) for v in marginals]
    if any(v < 0 or v > 1 for v in m):
        raise ValueError("marginals must lie in [0, 1]")
    if sum(m, ZERO) != size:
        raise ValueError(f"marginals sum to {sum(m, ZERO)}, expected {size}")
    cum = [ZERO]
    for v in m:
        cum.append(cum[-1] + v)
    cuts = sorted({c - math.floor(c) for c in cum} | {ZERO, ONE})
    out = {}
    for lo, hi in zip(cuts, cuts[1:]):
        if hi <= lo:
            continue
        u = (lo + hi) / 2
        chosen = []
        k = 0
        for i in range(len(m)):
            while k < size and u + k < cum[i]:
                k += 1
            if k < size and cum[i] <= u + k < cum[i + 1]:
                chosen.append(i)
        key = tuple(chosen)
        if len(key) != size:
            raise AssertionError("systematic decomposition produced a short subset")
        out[key] = out.get(key, ZERO) + (hi - lo)
    return out


# ---------------------------------------------------------------------------
# utilities


def marginals(strategy, game: SecurityGame | None = None) -> tuple:
    """phi(C): the per-target coverage probabilities of a defender strategy."""
    if isinstance(strategy, DefenderMixedStrategy):
        c = strategy.marginals()
    else:
        c = tuple(as_rational(v) for v in strategy)
    if game is not None and len(c) != game.n:
        raise ValueError(f"coverage has length {len(c)}, game has {game.n} targets")
    return c


def attack_probs(a, game: SecurityGame) -> tuple:
    """Per-target attack probabilities (they sum to L)."""
    if isinstance(a, AttackerMixedStrategy):
        return a.target_probs(game.n)
    if isinstance(a, Mapping):
        return AttackerMixedStrategy(a).target_probs(game.n)
    a = tuple(as_rational(v) for v in a)
    if len(a) != game.n:
        raise ValueError(f"attack vector has length {len(a)}, game has {game.n} targets")
    return a


def attacker_target_values(c, game) -> tuple:
    """U_a(c, t_i) for every target."""
    return tuple(ci * t.ac + (1 - ci) * t.au for ci, t in zip(c, game.targets))


def defender_target_values(c, game) -> tuple:
    """U_d(c, t_i) for every target."""
    return tuple(ci * t.dc + (1 - ci) * t.du for ci, t in zip(c, game.targets))


def defender_utility(c, a, game: SecurityGame) -> Fraction:
    c = marginals(c, game)
    a = attack_probs(a, game)
    return sum((ai * v for ai, v in zip(a, defender_target_values(c, game)) if ai), ZERO)


def attacker_utility(c, a, game: SecurityGame) -> Fraction:
    c = marginals(c, game)
    a = attack_probs(a, game)
    return sum((ai * v for ai, v in zip(a, attacker_target_values(c, game)) if ai), ZERO)


def pure_utilities(d, q, game) -> tuple:
    """(U_d(d, q), U_a(d, q)) for a coverage vector and attack vector."""
    ud = ua = ZERO
    for i in q:
        t = game.targets[i]
        if d[i]:
            ud += t.dc
            ua += t.ac
        else:
            ud += t.du
            ua += t.au
    return ud, ua


@dataclass(frozen=True)
class BestResponse:
    value: Fraction
    responses: tuple   # attack vectors attaining ``value``

    @property
    def targets(self) -> frozenset:
        return frozenset(i for q in self.responses for i in q)


def best_response_value(c, game: SecurityGame) -> BestResponse:
    """E(C) and the attacker's best-response set tau(C)."""
    c = marginals(c, game)
    vals = attacker_target_values(c, game)
    L = game.L
    order = sorted(range(game.n), key=lambda i: -vals[i])
    top = [vals[i] for i in order[:L]]
    value = sum(top, ZERO)
    threshold = top[-1]
    above = [i for i in range(game.n) if vals[i] > threshold]
    tied = [i for i in range(game.n) if vals[i] == threshold]
    need = L - len(above)
    responses = sorted(tuple(sorted(above + list(extra)))
                       for extra in itertools.combinations(tied, need))
    return BestResponse(value, tuple(responses))


def defender_pure_values(a, game: SecurityGame, D=None) -> dict:
    """U_d(d, a) for every feasible coverage vector d."""
    a = attack_probs(a, game)
    if D is None:
        D = enumerate_coverage_vectors(game)
    base = sum((ai * t.du for ai, t in zip(a, game.targets) if ai), ZERO)
    gain = [ai * t.delta_d for ai, t in zip(a, game.targets)]
    return {d: base + sum((g for g, di in zip(gain, d) if di), ZERO) for d in D}


def is_nash(defender, attacker, game: SecurityGame) -> bool:
    """Exact mutual best-response test.

    Strategy objects are checked support-wise.  A bare coverage vector (or
    per-target attack vector) is checked through its expected payoff, which
    is equivalent because every payoff here is linear in the marginals.
    """
    D = enumerate_coverage_vectors(game)
    c = marginals(defender, game)
    a = attack_probs(attacker, game)
    if any(not 0 <= ci <= 1 for ci in c) or any(not 0 <= ai <= 1 for ai in a):
        return False
    if sum(a, ZERO) != game.L:
        return False

    values = defender_pure_values(a, game, D)
    best = max(values.values())
    if isinstance(defender, DefenderMixedStrategy):
        for d in defender.support:
            if d not in values or values[d] != best:
                return False
    elif defender_utility(c, a, game) != best:
        return False

    br = best_response_value(c, game)
    if isinstance(attacker, AttackerMixedStrategy):
        if attacker.L != game.L:
            return False
        allowed = set(br.responses)
        if any(q not in allowed for q in attacker.probs):
            return False
    elif attacker_utility(c, a, game) != br.value:
        return False
    return True


def realize_marginals(c, game: SecurityGame) -> DefenderMixedStrategy:
    """A defender mixed strategy whose marginals are exactly ``c``.

    Singleton-schedule homogeneous games use a systematic decomposition;
    anything else solves a feasibility LP over D.
    """
    c = marginals(c, game)
    if any(not 0 <= ci <= 1 for ci in c):
        raise ValueError("coverage probabilities must lie in [0, 1]")
    D = enumerate_coverage_vectors(game)
    Dset = set(D)
    sched = set(game.resources[0])
    if game.is_homogeneous and all(len(s) <= 1 for s in sched):
        K = game.K
        slack = K - sum(c, ZERO)
        if slack >= 0:
            fill = []
            while slack > 0:
                fill.append(min(ONE, slack))
                slack -= fill[-1]
            if len(fill) <= K:
                fill += [ZERO] * (K - len(fill))
                parts = systematic_decomposition(list(c) + fill, K)
                out = {}
                for subset, p in parts.items():
                    d = tuple(1 if i in subset else 0 for i in range(game.n))
                    out[d] = out.get(d, ZERO) + p
                if all(d in Dset for d in out):
                    return DefenderMixedStrategy(out)
    return _realize_by_lp(c, game, D)


def _realize_by_lp(c, game, D):
    from .lp import EQ, LinearProgram, solve_lp

    lp = LinearProgram()
    for k, d in enumerate(D):
        lp.add_variable(f"C{k}")
    lp.add_constraint([ONE] * len(D), EQ, ONE, "total")
    for i in range(game.n):
        lp.add_constraint([Fraction(d[i]) for d in D], EQ, c[i], f"cover_t{i + 1}")
    sol = solve_lp(lp)
    if not sol.feasible:
        raise ValueError(f"coverage {tuple(map(str, c))} is not realizable in this game")
    return DefenderMixedStrategy({d: p for d, p in zip(D, sol.assignment) if p})


def game_is_singleton_homogeneous(game: SecurityGame, require_all=True) -> bool:
    """Homogeneous resources whose schedules are single targets (plus possibly empty).

    With ``require_all`` every target must be coverable.
    """
    if not game.is_homogeneous:
        return False
    sched = set(game.resources[0])
    if any(len(s) > 1 for s in sched):
        return False
    if require_all:
        return all(frozenset({i}) in sched for i in range(game.n))
    return True
