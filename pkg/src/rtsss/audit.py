"""Verification of secrecy, dimension bounds, repair leakage and rates.

Two independent routes decide whether a set of observed symbols reveals
anything about the secret:

* the rank criterion: take a basis ``Gb`` of the F_p column span of what is
  observed and compare ranks of ``E @ Gb`` and of ``E`` without its first
  row times ``Gb``, where ``E`` maps polynomial coefficients to evaluations;
* exhaustive enumeration of every coefficient vector, tabulating how often
  each (observation, secret) pair occurs.

The second is slow and only feasible on small fields; it is the oracle the
first is checked against.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernels, linalg, regcode
from .errors import BadParams, TooLargeToEnumerate
from .scheme import SchemeConfig, evaluations

DEFAULT_MAX_STATES = 1 << 28
CHUNK = 1 << 20
DENSE_LIMIT = 1 << 22


@dataclass
class SecrecyVerdict:
    subset: tuple
    rank: int                  # dimension of the observed F_p column span
    criterion_pass: bool
    method: str                # "rank" or "exhaustive"
    full_rank: int | None = None
    reduced_rank: int | None = None
    detail: str = ""


# -- rank criterion ------------------------------------------------------------

def observation_matrix(config: SchemeConfig, subset) -> list[list[int]]:
    """``t x (|subset| alpha)`` stack of the subset's generator blocks."""
    subset = tuple(sorted(subset))
    t = config.params.t
    if not subset:
        return [[] for _ in range(t)]
    return config.code.stacked(subset)


def transcript_matrix(config: SchemeConfig, failed: int, helpers) -> list[list[int]]:
    """``t x d beta`` matrix whose columns are ``G_j @ R_j`` for every helper."""
    code = config.code
    T = tuple(sorted(helpers))
    entry = code.repair_entry(failed, T)
    return linalg.hstack(*(linalg.matmul(code.fp, code.block(j), entry.contributions[j]) for j in T))


def rank_criterion(config: SchemeConfig, G_obs, subset=()) -> SecrecyVerdict:
    t = config.params.t
    cols = len(G_obs[0]) if G_obs and G_obs[0] else 0
    if cols == 0:
        return SecrecyVerdict(tuple(subset), 0, True, "rank", 0, 0, "nothing observed")
    basis = linalg.column_basis(config.code.fp, G_obs)
    r = len(basis)
    Gb = [[row[c] for c in basis] for row in G_obs]
    F = config.field
    EG = linalg.matmul(F, config.coefficient_matrix(), Gb)
    full = linalg.rank(F, EG)
    reduced = linalg.rank(F, EG[1:]) if t > 1 else 0
    ok = full == reduced == r
    return SecrecyVerdict(tuple(subset), r, ok, "rank", full, reduced)


def secrecy_rank_check(config: SchemeConfig, subset) -> SecrecyVerdict:
    """Rank test for the shares of ``subset`` (1-based participant indices)."""
    subset = tuple(sorted(subset))
    for i in subset:
        config.code.block(i)
    return rank_criterion(config, observation_matrix(config, subset), subset)


def repair_leakage_check(config: SchemeConfig, failed: int, helpers) -> SecrecyVerdict:
    """Rank test applied to the full repair transcript for ``failed`` from ``helpers``."""
    T = tuple(sorted(helpers))
    v = rank_criterion(config, transcript_matrix(config, failed, T), T)
    v.detail = f"repair of {failed}"
    return v


# -- exhaustive oracle ---------------------------------------------------------

@dataclass
class DistributionTable:
    """How many coefficient vectors produce each (observation, secret) pair.

    Stored sparsely: ``keys`` lists the distinct observations, packed as
    ``sum(code_j * q**j)``; cell ``c`` says observation ``keys[cell_obs[c]]``
    occurs with secret ``cell_secret[c]`` exactly ``cell_count[c]`` times.
    Cells are sorted by observation, then secret, and zero cells are omitted.
    """

    q: int
    width: int
    keys: np.ndarray
    cell_obs: np.ndarray
    cell_secret: np.ndarray
    cell_count: np.ndarray

    def total(self) -> int:
        return int(self.cell_count.sum())

    def observation(self, r: int) -> tuple:
        key = int(self.keys[r])
        out = []
        for _ in range(self.width):
            key, c = divmod(key, self.q)
            out.append(c)
        return tuple(out)

    def row(self, r: int) -> list[int]:
        out = [0] * self.q
        lo, hi = np.searchsorted(self.cell_obs, [r, r + 1])
        for s, c in zip(self.cell_secret[lo:hi].tolist(), self.cell_count[lo:hi].tolist()):
            out[s] = c
        return out

    def as_dict(self) -> dict:
        return {self.observation(r): self.row(r) for r in range(len(self.keys))}

    def passes(self) -> bool:
        """Every observed tuple is produced equally often by every secret."""
        if len(self.keys) == 0:
            return True
        n_obs = len(self.keys)
        per_obs = np.bincount(self.cell_obs, minlength=n_obs)
        if np.any(per_obs != self.q):
            return False
        counts = self.cell_count.reshape(n_obs, self.q)
        return bool(np.all(counts == counts[:, :1]))

    def entropy_bits(self) -> tuple[float, float]:
        """``(H(S), H(S | Z))`` in bits.

        Probabilities are exact count ratios; only the final logarithms
        are floating point.
        """
        total = self.total()
        if total == 0:
            return 0.0, 0.0
        counts = self.cell_count.astype(np.float64)
        per_secret = np.bincount(self.cell_secret, weights=counts, minlength=self.q)
        per_secret = per_secret[per_secret > 0]
        h_s = float(-np.sum(per_secret / total * (np.log2(per_secret) - math.log2(total))))
        row_total = np.bincount(self.cell_obs, weights=counts)[self.cell_obs]
        h_cond = float(-np.sum(counts / total * (np.log2(counts) - np.log2(row_total))))
        return h_s, max(h_cond, 0.0) + 0.0  # normalise -0.0


class _Accumulator:
    """Counts keyed by ``observation * q + secret``; dense when small enough."""

    def __init__(self, q, width):
        self.q = q
        self.width = width
        size = q ** (width + 1)
        self.dense = np.zeros(size, dtype=np.int64) if size <= DENSE_LIMIT else None
        self.combined = np.zeros(0, dtype=np.uint64)
        self.counts = np.zeros(0, dtype=np.int64)

    def add(self, keys, secrets):
        combined = keys * np.uint64(self.q) + secrets.astype(np.uint64)
        if self.dense is not None:
            self.dense += np.bincount(combined.astype(np.int64), minlength=self.dense.size)
            return
        u, c = np.unique(combined, return_counts=True)
        self._merge_sparse(u, c.astype(np.int64))

    def _merge_sparse(self, u, c):
        if len(self.combined) == 0:
            self.combined, self.counts = u, c
            return
        cat = np.concatenate([self.combined, u])
        weights = np.concatenate([self.counts, c])
        merged, inv = np.unique(cat, return_inverse=True)
        out = np.zeros(len(merged), dtype=np.int64)
        np.add.at(out, inv, weights)
        self.combined, self.counts = merged, out

    def table(self) -> DistributionTable:
        q = self.q
        if self.dense is not None:
            nz = np.nonzero(self.dense)[0]
            combined, counts = nz.astype(np.uint64), self.dense[nz]
        else:
            combined, counts = self.combined, self.counts
        obs_keys = combined // np.uint64(q)
        secrets = (combined % np.uint64(q)).astype(np.int64)
        keys, cell_obs = np.unique(obs_keys, return_inverse=True)
        return DistributionTable(q, self.width, keys, cell_obs.astype(np.int64).ravel(),
                                 secrets, counts)

    def save(self, path, next_state, tag):
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            if self.dense is not None:
                np.savez(fh, next_state=next_state, tag=tag, dense=self.dense)
            else:
                np.savez(fh, next_state=next_state, tag=tag, combined=self.combined,
                         counts=self.counts)
        os.replace(tmp, path)

    def load(self, path, tag):
        with np.load(path) as data:
            if str(data["tag"]) != tag:
                raise ValueError("checkpoint belongs to a different enumeration")
            if "dense" in data:
                self.dense = data["dense"].copy()
            else:
                self.combined = data["combined"].copy()
                self.counts = data["counts"].copy()
            return int(data["next_state"])


def _subset_observer(config, subset):
    code, F = config.code, config.field
    subset = tuple(sorted(subset))

    def observe(coeffs):
        payloads = regcode.encode_codes(code, F, evaluations(config, coeffs))
        return [v for i in subset for v in payloads[i - 1]]

    return observe


def _transcript_observer(config, failed, helpers):
    code, F = config.code, config.field
    T = tuple(sorted(helpers))

    def observe(coeffs):
        payloads = regcode.encode_codes(code, F, evaluations(config, coeffs))
        return [v for j in T for v in regcode.contribution_codes(code, F, j, payloads[j - 1], failed, T)]

    return observe


def _enumerate(config, observe, width, *, max_states, workers, checkpoint, tag):
    F = config.field
    q, p, m, t = F.order, F.p, F.m, config.params.t
    total = q ** t
    if total > max_states:
        raise TooLargeToEnumerate(f"{total} coefficient vectors exceed the cap of {max_states}")
    if q ** (width + 1) >= 1 << 64:
        raise TooLargeToEnumerate("observation and secret do not fit a 64-bit key")

    # superposition tables: observation of c is the sum over i of the
    # observation of the coefficient vector holding only c_i
    rows = []
    for i in range(t):
        base = [0] * t
        per_value = []
        for v in range(q):
            base[i] = v
            per_value.append(observe(base))
        rows.append(per_value)

    if p == 2:
        tab = np.zeros((t, q), dtype=np.uint64)
        for i in range(t):
            for v in range(q):
                key = 0
                for j, c in enumerate(rows[i][v]):
                    key |= c << (j * m)
                tab[i, v] = key

        def run(start, stop):
            out = np.empty(stop - start, dtype=np.uint64)
            kernels.enumerate_keys_xor(tab, q, start, stop, out)
            return out
    else:
        tab = np.zeros((t, q, width * m), dtype=np.uint16)
        for i in range(t):
            for v in range(q):
                for j, c in enumerate(rows[i][v]):
                    tab[i, v, j * m:(j + 1) * m] = F.digits(c)

        def run(start, stop):
            out = np.empty(stop - start, dtype=np.uint64)
            kernels.enumerate_keys(tab, p, q, start, stop, out)
            return out

    # spot-check the superposition against the direct pipeline
    rng = random.Random(0x5EC)
    for state in {0, total - 1} | {rng.randrange(total) for _ in range(8)}:
        digits = []
        rest = state
        for _ in range(t):
            rest, d = divmod(rest, q)
            digits.append(d)
        coeffs = digits[::-1]
        direct = sum(c * q ** j for j, c in enumerate(observe(coeffs)))
        if int(run(state, state + 1)[0]) != direct:
            raise AssertionError("observation is not additive in the coefficients")

    block = q ** (t - 1)
    acc = _Accumulator(q, width)
    start = 0
    if checkpoint and os.path.exists(checkpoint):
        start = acc.load(checkpoint, tag)

    def work(bounds):
        a, b = bounds
        return b, run(a, b), np.arange(a, b, dtype=np.int64) // block

    def consume(results):
        for stop, keys, secrets in results:
            acc.add(keys, secrets)
            if checkpoint:
                acc.save(checkpoint, stop, tag)

    ranges = [(a, min(a + CHUNK, total)) for a in range(start, total, CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            consume(pool.map(work, ranges))
    else:
        consume(map(work, ranges))
    return acc.table()


def _tag(config, what):
    return f"{config.scheme_id.hex()}:{config.mode}:{what}"


def secrecy_exhaustive(config: SchemeConfig, subset, *, max_states=DEFAULT_MAX_STATES,
                       workers=1, checkpoint=None):
    """Enumerate all ``q**t`` coefficient vectors; works in both modes.

    Returns ``(table, passed)``. ``checkpoint`` names an ``.npz`` file that
    is rewritten after every chunk and resumed from when present.
    """
    subset = tuple(sorted(subset))
    width = len(subset) * config.params.alpha
    table = _enumerate(config, _subset_observer(config, subset), width,
                       max_states=max_states, workers=workers, checkpoint=checkpoint,
                       tag=_tag(config, f"shares{subset}"))
    return table, table.passes()


def transcript_exhaustive(config: SchemeConfig, failed: int, helpers, *,
                          max_states=DEFAULT_MAX_STATES, workers=1, checkpoint=None):
    """Exhaustive oracle over the repair transcript instead of whole shares."""
    T = tuple(sorted(helpers))
    width = len(T) * config.params.beta
    table = _enumerate(config, _transcript_observer(config, failed, T), width,
                       max_states=max_states, workers=workers, checkpoint=checkpoint,
                       tag=_tag(config, f"repair{failed}{T}"))
    return table, table.passes()


# -- code-level checks ---------------------------------------------------------

@dataclass
class DimensionReport:
    t: int
    bound: int
    dims: dict = dc_field(default_factory=dict)   # (k-1)-subset -> dim of summed spans

    @property
    def ok(self) -> bool:
        return all(d < self.t for d in self.dims.values())

    @property
    def within_bound(self) -> bool:
        return all(d <= self.bound for d in self.dims.values())


def dimension_check(code: regcode.LinearRegenCode) -> DimensionReport:
    """Dimension of the summed column spaces of every ``k - 1`` nodes."""
    pr = code.params
    bound = sum(min(pr.alpha, (pr.d - i) * pr.beta) for i in range(pr.k - 1))
    report = DimensionReport(pr.t, bound)
    if pr.k < 2:
        return report
    for S in itertools.combinations(range(1, pr.n + 1), pr.k - 1):
        report.dims[S] = linalg.rank(code.fp, code.stacked(S))
    return report


@dataclass(frozen=True)
class RateReport:
    rho_rep: Fraction
    rho_inf: Fraction
    rho_inf_bound: Fraction
    optimal_rep: bool
    optimal_inf: bool


def rates(code: regcode.LinearRegenCode) -> RateReport:
    pr = code.params
    if pr.alpha > pr.d * pr.beta:
        raise BadParams("alpha > d*beta cannot be repaired")
    rho_rep = Fraction(pr.alpha, pr.d * pr.beta)
    rho_inf = Fraction(1, pr.alpha)
    bound = Fraction(pr.k * (2 * pr.d - pr.k + 1), 2 * pr.d * pr.t)
    return RateReport(rho_rep, rho_inf, bound, pr.alpha == pr.d * pr.beta, rho_inf == bound)


# -- full audit ------------------------------------------------------------------

@dataclass
class AuditReport:
    mode: str
    secrecy: list = dc_field(default_factory=list)
    exhaustive: list = dc_field(default_factory=list)
    exhaustive_error: str | None = None
    repair_leakage: list = dc_field(default_factory=list)
    dimension: DimensionReport | None = None
    rates: RateReport | None = None
    validation: regcode.ValidationReport | None = None

    @property
    def ok(self) -> bool:
        checks = [v.criterion_pass for v in self.secrecy]
        checks += [v.criterion_pass for v in self.exhaustive]
        checks += [v.criterion_pass for v in self.repair_leakage]
        checks.append(self.dimension.ok if self.dimension else True)
        checks.append(self.validation.ok if self.validation else True)
        return all(checks) and self.exhaustive_error is None

    def to_dict(self) -> dict:
        def verdict(v):
            return {"subset": list(v.subset), "rank": v.rank, "pass": v.criterion_pass,
                    "method": v.method, "full_rank": v.full_rank,
                    "reduced_rank": v.reduced_rank, "detail": v.detail}

        r = self.rates
        return {
            "mode": self.mode,
            "ok": self.ok,
            "secrecy": [verdict(v) for v in self.secrecy],
            "exhaustive": [verdict(v) for v in self.exhaustive],
            "exhaustive_error": self.exhaustive_error,
            "repair_leakage": [verdict(v) for v in self.repair_leakage],
            "dimension": {
                "t": self.dimension.t,
                "bound": self.dimension.bound,
                "ok": self.dimension.ok,
                "dims": {",".join(map(str, S)): d for S, d in self.dimension.dims.items()},
            },
            "rates": {
                "rho_rep": str(r.rho_rep),
                "rho_inf": str(r.rho_inf),
                "rho_inf_bound": str(r.rho_inf_bound),
                "optimal_rep": r.optimal_rep,
                "optimal_inf": r.optimal_inf,
            },
            "code_valid": self.validation.ok if self.validation else None,
        }


def run_audit(config: SchemeConfig, *, exhaustive=False, max_states=DEFAULT_MAX_STATES,
              workers=1, raise_on_refusal=True) -> AuditReport:
    pr = config.params
    report = AuditReport(config.mode)
    report.validation = regcode.validate_code(config.code)
    subsets = list(itertools.combinations(range(1, pr.n + 1), pr.k - 1))
    for S in subsets:
        report.secrecy.append(secrecy_rank_check(config, S))
    if exhaustive:
        for S in subsets:
            try:
                _, ok = secrecy_exhaustive(config, S, max_states=max_states, workers=workers)
            except TooLargeToEnumerate as exc:
                if raise_on_refusal:
                    raise
                report.exhaustive_error = str(exc)
                break
            report.exhaustive.append(SecrecyVerdict(S, -1, ok, "exhaustive"))
    for i in range(1, pr.n + 1):
        for T in config.code.helper_sets(i):
            if (i, T) in config.code.repair:
                report.repair_leakage.append(repair_leakage_check(config, i, T))
    report.dimension = dimension_check(config.code)
    report.rates = rates(config.code)
    return report


__all__ = [
    "AuditReport", "DimensionReport", "DistributionTable", "RateReport", "SecrecyVerdict",
    "dimension_check", "rank_criterion", "rates", "repair_leakage_check", "run_audit",
    "secrecy_exhaustive", "secrecy_rank_check", "transcript_exhaustive",
]
