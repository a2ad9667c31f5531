"""Li-Yorke witness sequences for star subshifts and their bookkeeping.

Given a base sequence ``s`` and gap lengths ``N_0, N_1, ...`` the witness
``t`` is laid out in blocks. Block ``i`` starts at the sync position ``u_i``
(``u_0 = 0``, ``u_1 = N_0 + 5``, ``u_{i+1} = u_i + N_i + i + 6``) and holds

    s[u_i .. u_i+i]  1  flip(s[u_i+i+2])  1  <payload>  1

so ``t`` agrees with ``s`` on ``i+1`` symbols at ``u_i`` and disagrees one or
two places later. The payload slots of block ``i`` are the positions
``u_i+i+4 .. u_{i+1}-2``: ``N_0`` of them in block 0 and ``N_i + 1`` in
later blocks. Writing a whole sequence into the payload slots is the
injection ``pr``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .coupled_expanding import orbit
from .errors import (
    AdmissibilityError,
    DomainError,
    HorizonError,
    PayloadExhaustedError,
)
from .ifs import SimilarityIFS, bernoulli_cylinder_mass, cylinder_weight, moran_root
from .symbolic import (
    SymbolStream,
    SymbolWord,
    first_inadmissible,
    metric,
    phi_inverse_symbols,
    phi_symbols,
    shift,
)
from .transition_matrix import TransitionMatrix


def flip(a: int, m: int) -> int:
    """Cyclic successor on ``{1..m}``; never equal to ``a``."""
    return 1 + (a % m)


@dataclass(frozen=True)
class WitnessSchedule:
    """Gap lengths ``N_n`` given by a formula or an explicit finite list."""

    label: str
    formula: Callable[[int], int] | None = field(default=None, compare=False)
    values: tuple[int, ...] | None = None

    def N(self, n: int) -> int:
        if self.values is not None:
            if n >= len(self.values):
                raise HorizonError(f"schedule {self.label!r} lists only {len(self.values)} gap lengths")
            return self.values[n]
        value = self.formula(n)
        if value < 0:
            raise ValueError(f"negative gap length N_{n} = {value}")
        return value

    @classmethod
    def power(cls, exponent: int = 2, coeff: int = 1) -> WitnessSchedule:
        label = f"n^{exponent}" if coeff == 1 else f"{coeff}*n^{exponent}"
        return cls(label, lambda n: coeff * n**exponent)

    @classmethod
    def explicit(cls, values: Sequence[int]) -> WitnessSchedule:
        values = tuple(int(v) for v in values)
        if any(v < 0 for v in values):
            raise ValueError("gap lengths must be nonnegative")
        return cls(",".join(map(str, values)), values=values)

    @classmethod
    def parse(cls, text: str) -> WitnessSchedule:
        """``"n^2"``, ``"3*n^2"``, ``"n"``, ``"7"`` (constant) or ``"0,1,4,9"``."""
        text = text.replace(" ", "")
        m = re.fullmatch(r"(?:(\d+)\*)?n(?:\^(\d+))?", text)
        if m:
            return cls.power(int(m.group(2) or 1), int(m.group(1) or 1))
        if re.fullmatch(r"\d+", text):
            c = int(text)
            return cls(text, lambda n: c)
        if re.fullmatch(r"\d+(,\d+)+", text):
            return cls.explicit([int(v) for v in text.split(",")])
        raise ValueError(f"cannot read schedule {text!r}")

    def block_length(self, i: int) -> int:
        return self.N(0) + 5 if i == 0 else self.N(i) + i + 6

    def payload_capacity(self, i: int) -> int:
        return self.N(0) if i == 0 else self.N(i) + 1

    def sync_positions(self, count: int) -> list[int]:
        """``[u_0, ..., u_{count-1}]``."""
        u = [0]
        while len(u) < count:
            u.append(u[-1] + self.block_length(len(u) - 1))
        return u[:count]

    def blocks_within(self, horizon: int) -> list[int]:
        """Sync positions ``u_i < horizon``."""
        u = [0]
        while True:
            nxt = u[-1] + self.block_length(len(u) - 1)
            if nxt >= horizon:
                return u
            u.append(nxt)

    def vanishing_ratio(self, M: int) -> float:
        """``(M+6)^2 / sum_{n<M} N_n``; must tend to 0 for the dimension argument."""
        total = sum(self.N(n) for n in range(M))
        return math.inf if total == 0 else (M + 6) ** 2 / total

    def M_of(self, k: int) -> int:
        """The ``M`` with ``sum_{n<M} N_n < 2(k+1) <= sum_{n<=M} N_n``."""
        target, total, M = 2 * (k + 1), 0, 0
        while True:
            total += self.N(M)
            if total >= target:
                return M
            M += 1


DEFAULT_SCHEDULE = WitnessSchedule.power(2)


def _block_layout(u: int, i: int, next_u: int):
    copies = range(u, u + i + 1)
    pins = {u + i + 1: 1, u + i + 3: 1, next_u - 1: 1}
    flip_at = u + i + 2
    free = range(u + i + 4, next_u - 1)
    return copies, pins, flip_at, free


def _require_admissible(symbols, A: TransitionMatrix, what: str):
    k = first_inadmissible(symbols, A)
    if k is not None:
        raise AdmissibilityError(f"{what} is not admissible: junction {symbols[k]} -> {symbols[k + 1]} at positions {k}, {k + 1}")


def build_witness(
    s: SymbolStream,
    sched: WitnessSchedule,
    A: TransitionMatrix,
    payload: SymbolStream,
    horizon: int | None = None,
) -> SymbolStream:
    """The witness ``t`` for ``s``, with free slots filled from ``payload`` in order.

    Every position is assigned from the clause that pins it; the result is
    checked for admissibility against ``A``.
    """
    H = s.horizon if horizon is None else horizon
    if H > s.horizon:
        raise HorizonError(f"base sequence has horizon {s.horizon}, need {H}")
    if not s.m == A.m == payload.m:
        raise ValueError("base, payload and matrix must share the alphabet")
    _require_admissible(s.symbols, A, "base sequence")
    _require_admissible(payload.symbols, A, "payload")
    t = [0] * H
    free = []
    u_list = sched.blocks_within(H)
    for i, u in enumerate(u_list):
        next_u = u + sched.block_length(i)
        copies, pins, flip_at, slots = _block_layout(u, i, next_u)
        for k in copies:
            if k < H:
                t[k] = s[k]
        for k, a in pins.items():
            if k < H:
                t[k] = a
        if flip_at < H:
            t[flip_at] = flip(s[flip_at], s.m)
        free.extend(k for k in slots if k < H)
    if len(free) > payload.horizon:
        raise PayloadExhaustedError(
            f"horizon {H} has {len(free)} payload slots but the payload has only {payload.horizon} symbols"
        )
    for k, a in zip(free, payload.symbols):
        t[k] = a
    _require_admissible(t, A, "witness")
    return SymbolStream(tuple(t), s.m, "built-by-witness")


def _pr_symbols(t, s: SymbolStream, sched: WitnessSchedule):
    """Yield ``pr(t)`` block by block until ``s`` or ``t`` runs out."""
    pos, taken, i = 0, 0, 0
    m = s.m
    while True:
        for _ in range(i + 1):
            if pos >= s.horizon:
                return
            yield s[pos]
            pos += 1
        yield 1
        pos += 1
        if pos >= s.horizon:
            return
        yield flip(s[pos], m)
        pos += 1
        yield 1
        pos += 1
        for _ in range(sched.payload_capacity(i)):
            if taken >= len(t):
                return
            yield t[taken]
            taken += 1
            pos += 1
        yield 1
        pos += 1
        i += 1


def pr_map(
    t: SymbolStream,
    s: SymbolStream,
    sched: WitnessSchedule,
    A: TransitionMatrix,
    horizon: int | None = None,
) -> SymbolStream:
    """Embed ``t`` as the payload of the witness template around ``s``.

    Without ``horizon`` the longest prefix determined by the known symbols of
    ``s`` and ``t`` is returned.
    """
    if not s.m == A.m == t.m:
        raise ValueError("base, payload and matrix must share the alphabet")
    _require_admissible(s.symbols, A, "base sequence")
    _require_admissible(t.symbols, A, "payload")
    out = []
    for a in _pr_symbols(t.symbols, s, sched):
        if horizon is not None and len(out) >= horizon:
            break
        out.append(a)
    if horizon is not None and len(out) < horizon:
        raise HorizonError(f"pr(t) is determined only up to {len(out)} symbols, asked for {horizon}")
    _require_admissible(out, A, "pr image")
    return SymbolStream(tuple(out), s.m, "built-by-pr")


def membership_violations(t: SymbolStream, s: SymbolStream, sched: WitnessSchedule, A: TransitionMatrix) -> list[str]:
    """Every clause of the witness-set definition that ``t`` breaks within its horizon."""
    out = []
    H = min(t.horizon, s.horizon)
    k = first_inadmissible(t.symbols, A)
    if k is not None:
        out.append(f"inadmissible junction at {k}")
    u_list = sched.blocks_within(H)
    for i, u in enumerate(u_list):
        nxt = u + sched.block_length(i)
        for k in range(u, min(u + i + 1, H)):
            if t[k] != s[k]:
                out.append(f"block {i}: t[{k}] != s[{k}]")
        for k, want in ((u + i + 1, 1), (u + i + 3, 1), (nxt - 1, 1)):
            if k < H and t[k] != want:
                out.append(f"block {i}: t[{k}] should be {want}")
        k = u + i + 2
        if k < H and t[k] != flip(s[k], s.m):
            out.append(f"block {i}: t[{k}] should be the flip of s[{k}]")
    return out


@dataclass
class SyncCheck:
    i: int
    u: int
    prox: float
    sep: float
    prox_ok: bool
    sep_ok: bool

    @property
    def passed(self) -> bool:
        return self.prox_ok and self.sep_ok


@dataclass
class SymbolicReport:
    rows: list[SyncCheck]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def verify_liyorke_symbolic(s: SymbolStream, t: SymbolStream, sched: WitnessSchedule, depth: int) -> SymbolicReport:
    """Proximality ``d(s, t)`` after ``u_i`` shifts and separation after ``u_i + i + 1`` shifts.

    Checks ``prox_i <= 2**-i`` and ``sep_i >= 1/2`` for ``i = 0..depth``.
    """
    u = sched.sync_positions(depth + 1)
    need = u[depth] + depth + 3
    if min(s.horizon, t.horizon) < need:
        raise HorizonError(f"depth {depth} needs horizon {need}, have {min(s.horizon, t.horizon)}")
    H = min(s.horizon, t.horizon)
    s, t = SymbolStream(s.symbols[:H], s.m), SymbolStream(t.symbols[:H], t.m)
    rows = []
    for i in range(depth + 1):
        prox = metric(shift(s, u[i]), shift(t, u[i]))
        sep = metric(shift(s, u[i] + i + 1), shift(t, u[i] + i + 1))
        rows.append(SyncCheck(i, u[i], prox, sep, prox <= 2.0**-i, sep >= 0.5))
    return SymbolicReport(rows)


@dataclass
class GeometricReport:
    horizon: int
    distances: list[float]
    window: int
    tail_min: float
    tail_max: float
    windows: list[tuple[int, float, float]]
    proximal: bool
    separated: bool
    note: str = "finite-horizon evidence, not a proof"

    @property
    def witnessed(self) -> bool:
        return self.proximal and self.separated

    def verdict(self) -> str:
        status = "witnessed" if self.witnessed else "not witnessed"
        return f"Li-Yorke behaviour {status} at horizon {self.horizon} ({self.note})"


def verify_liyorke_geometric(
    system,
    x,
    y,
    horizon: int,
    eps_prox: float,
    eps_sep: float,
    window: int | None = None,
) -> GeometricReport:
    """Orbit distances ``|f^n x - f^n y|`` for ``n < horizon``, judged over the tail window.

    ``system`` is a ``PiecewiseExpandingMap`` or any callable step, or a
    ``SimilarityIFS`` (its expanding map is used). Exact rational points stay
    exact along the orbit.
    """
    step = system.expanding_map if isinstance(system, SimilarityIFS) else system
    xs = orbit(step, x, horizon - 1)
    ys = orbit(step, y, horizon - 1)
    d = [float(abs(a - b)) for a, b in zip(xs, ys)]
    window = window or max(1, horizon // 2)
    tail = d[-window:]
    windows = [(k, min(d[k : k + window]), max(d[k : k + window])) for k in range(0, horizon, window)]
    return GeometricReport(
        horizon=horizon,
        distances=d,
        window=window,
        tail_min=min(tail),
        tail_max=max(tail),
        windows=windows,
        proximal=min(tail) < eps_prox,
        separated=max(tail) > eps_sep,
    )


@dataclass(frozen=True)
class DeltaRecord:
    k: int
    preimage_length: int
    embedded_length: int
    delta: int
    M: int
    bound: int


def _slot_position(sched: WitnessSchedule, L: int) -> int:
    """Index in ``pr(t)`` of the ``L``-th payload symbol (1-based ``L``)."""
    before, u, i = 0, 0, 0
    while True:
        cap = sched.payload_capacity(i)
        if before + cap >= L:
            return u + i + 4 + (L - before - 1)
        before += cap
        u += sched.block_length(i)
        i += 1


def delta_k(alpha_prefix, sched: WitnessSchedule) -> DeltaRecord:
    """Length overhead of the embedded cylinder over the coding preimage of ``[a_0..a_k]``.

    The preimage cylinder has length ``L = k + 1 + #{j : a_j != 1}``; its
    image under ``pr`` is fixed up to the ``L``-th payload symbol.
    """
    symbols = tuple(alpha_prefix)
    k = len(symbols) - 1
    L = len(phi_inverse_symbols(symbols))
    embedded = _slot_position(sched, L) + 1
    M = sched.M_of(k)
    return DeltaRecord(k, L, embedded, embedded - L, M, (M + 6) ** 2)


def delta_table(alpha: Sequence[int], sched: WitnessSchedule, ks) -> list[DeltaRecord]:
    return [delta_k(alpha[: k + 1], sched) for k in ks]


def local_dimension_probe(
    ifs: SimilarityIFS,
    sched: WitnessSchedule | None,
    A: TransitionMatrix,
    alpha: SymbolStream,
    k_range,
    base: SymbolStream | None = None,
) -> list[tuple[int, float]]:
    """``(k, log nu[a_0..a_k] / log diam)`` along the embedded cylinders of ``alpha``.

    The diameter is that of the geometric image of the embedded cylinder
    ``pr(phi^{-1}[a_0..a_k])``, i.e. of ``code_point`` applied to its
    ``phi`` coding; it is evaluated in log form so long cylinders do not
    underflow. With ``sched=None`` the embedding is the identity.
    """
    ratios = ifs.ratios
    D = moran_root(ratios).p
    ks = list(k_range)
    if max(ks) >= alpha.horizon:
        raise HorizonError(f"k up to {max(ks)} needs alpha of horizon {max(ks) + 1}")
    log_seed = math.log(ifs.seed.length)
    embedded = None
    if sched is not None:
        t = SymbolStream(phi_inverse_symbols(alpha.symbols[: max(ks) + 1]), alpha.m)
        need = delta_k(alpha.symbols[: max(ks) + 1], sched).embedded_length + 2
        if base is None:
            base = SymbolStream.constant(1, need, alpha.m)
        embedded = pr_map(t, base, sched, A).symbols
    out = []
    for k in ks:
        prefix = alpha.symbols[: k + 1]
        log_mass = bernoulli_cylinder_mass(prefix, ratios, D).log
        if embedded is None:
            word = prefix
        else:
            n = delta_k(prefix, sched).embedded_length
            if embedded[n - 1] != 1:
                n += 1  # the successor of a symbol other than 1 is forced
            if n > len(embedded):
                raise HorizonError("base sequence too short for the requested k")
            word = phi_symbols(embedded[:n])
        log_diam = cylinder_weight(word, ratios).log + log_seed
        if not log_diam < 0:
            raise DomainError(f"k={k}: cylinder diameter {math.exp(log_diam)} is not below 1")
        out.append((k, log_mass / log_diam))
    return out


def as_stream(symbols, m: int) -> SymbolStream:
    if isinstance(symbols, SymbolStream):
        return symbols
    if isinstance(symbols, SymbolWord):
        return SymbolStream(symbols.symbols, m)
    return SymbolStream(tuple(symbols), m)
