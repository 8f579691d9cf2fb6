"""Linear exact-repair regenerating codes with F_p generator blocks.

A code stores, for every node ``i``, a ``t x alpha`` block ``G_i`` over F_p;
node ``i`` holds ``y @ G_i`` for a data vector ``y`` over GF(p^m). Repair of
node ``i`` from a helper set ``T`` is tabulated per ``(i, T)``: helper ``j``
sends ``payload_j @ R[j]`` (``beta`` symbols) and the newcomer multiplies the
concatenated contributions by an assembly matrix ``A`` (``d*beta x alpha``).

Participants are numbered from 1; helper sets are ascending tuples.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import (
    BadParams,
    FieldTooSmall,
    InconsistentShares,
    InsufficientShares,
    LengthMismatch,
    NoRepairTableEntry,
    NoSolution,
    NotInRepairSet,
    WrongContributionCount,
)
from .gf import FieldElement, is_prime, prime_field

MAX_T = 1 << 20


def storage_t(k: int, d: int, alpha: int, beta: int) -> int:
    """Data size supported by an (n, k, d) code: sum of min(alpha, (d-i) beta)."""
    return sum(min(alpha, (d - i) * beta) for i in range(k))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    alpha: int
    beta: int
    t: int

    def __post_init__(self):
        n, k, d, a, b, t = self.n, self.k, self.d, self.alpha, self.beta, self.t
        if min(n, k, d, a, b, t) < 1:
            raise BadParams("all code parameters must be positive")
        if not k <= d <= n - 1:
            raise BadParams(f"need k <= d <= n-1, got n={n} k={k} d={d}")
        if a > d * b:
            raise BadParams(f"alpha={a} exceeds d*beta={d * b}; repair impossible")
        if t != storage_t(k, d, a, b):
            raise BadParams(f"t={t} does not match sum of min(alpha, (d-i)beta)")
        if t > MAX_T:
            raise BadParams(f"t={t} is impractically large")

    @classmethod
    def derive(cls, n, k, d, alpha, beta):
        return cls(n, k, d, alpha, beta, storage_t(k, d, alpha, beta))


@dataclass(frozen=True)
class RepairEntry:
    failed: int
    helpers: tuple
    contributions: dict  # helper -> alpha x beta matrix over F_p
    assembly: tuple      # d*beta x alpha matrix over F_p


@dataclass
class ValidationReport:
    node_rank: list = dc_field(default_factory=list)   # (i, rank) with rank < alpha
    recovery: list = dc_field(default_factory=list)    # (B, rank) with rank < t
    repair: list = dc_field(default_factory=list)      # (i, T, reason)
    checked_subsets: int = 0
    checked_repairs: int = 0

    @property
    def ok(self) -> bool:
        return not (self.node_rank or self.recovery or self.repair)


def _freeze(M):
    return tuple(tuple(int(x) for x in row) for row in M)


class LinearRegenCode:
    """Immutable code description; construct through the factories below."""

    def __init__(self, params: CodeParams, p: int, blocks, repair: dict, name: str = "inline"):
        if not is_prime(p):
            raise BadParams(f"{p} is not prime")
        if len(blocks) != params.n:
            raise BadParams(f"expected {params.n} generator blocks")
        for b in blocks:
            if len(b) != params.t or any(len(row) != params.alpha for row in b):
                raise BadParams("every generator block must be t x alpha")
        self.params = params
        self.p = p
        self.blocks = tuple(_freeze([[x % p for x in row] for row in b]) for b in blocks)
        self.repair = dict(repair)
        self.name = name
        self.fp = prime_field(p)
        self._decoders = {}

    def __repr__(self):
        pr = self.params
        return (f"LinearRegenCode({self.name}, n={pr.n}, k={pr.k}, d={pr.d}, "
                f"alpha={pr.alpha}, beta={pr.beta}, t={pr.t}, p={self.p})")

    def __eq__(self, other):
        return (isinstance(other, LinearRegenCode) and self.params == other.params
                and self.p == other.p and self.blocks == other.blocks
                and self.repair == other.repair)

    def __hash__(self):
        return hash((self.params, self.p, self.blocks))

    @property
    def generator(self):
        """The full ``t x n*alpha`` generator matrix."""
        return _freeze(linalg.hstack(*self.blocks))

    def block(self, i: int):
        if not 1 <= i <= self.params.n:
            raise BadParams(f"node index {i} out of range")
        return self.blocks[i - 1]

    def stacked(self, nodes):
        return linalg.hstack(*(self.block(i) for i in nodes))

    def repair_entry(self, i: int, T) -> RepairEntry:
        key = (i, tuple(sorted(T)))
        try:
            return self.repair[key]
        except KeyError:
            raise NoRepairTableEntry(f"no repair table for node {i} from {key[1]}") from None

    def helper_sets(self, i: int):
        others = [j for j in range(1, self.params.n + 1) if j != i]
        return list(itertools.combinations(others, self.params.d))

    def _decoder(self, nodes: tuple):
        """Left inverse and parity checks for the stacked blocks of ``nodes``."""
        if nodes not in self._decoders:
            self._decoders[nodes] = self._build_decoder(nodes)
        return self._decoders[nodes]

    def _build_decoder(self, nodes):
        t = self.params.t
        GT = linalg.transpose(self.stacked(nodes))  # rows: observed symbols
        width = len(GT)
        aug = [row + [1 if r == c else 0 for c in range(width)] for r, row in enumerate(GT)]
        R, pivots = linalg.row_reduce(self.fp, aug, ncols=t)
        if len(pivots) < t:
            return None
        left = tuple(tuple(row[t:]) for row in R[:t])
        checks = tuple(tuple(row[t:]) for row in R[t:] if any(row[t:]))
        return left, checks


# -- repair table construction --------------------------------------------

def _assembly(fp, blocks, params, i, helpers, contributions):
    H = linalg.hstack(*(linalg.matmul(fp, blocks[j - 1], contributions[j]) for j in helpers))
    try:
        A = linalg.solve(fp, H, blocks[i - 1], unique=False)
    except NoSolution:
        return None
    return _freeze(A)


def build_repair_table(params: CodeParams, p: int, blocks, contributions: dict) -> dict:
    """Derive assembly matrices from caller-supplied contribution matrices.

    ``contributions`` maps ``(i, T)`` to ``{j: alpha x beta}``. Raises
    :class:`BadParams` if some entry cannot reproduce ``G_i``.
    """
    fp = prime_field(p)
    table = {}
    for (i, T), contrib in contributions.items():
        T = tuple(sorted(T))
        if len(T) != params.d or i in T:
            raise BadParams(f"invalid helper set {T} for node {i}")
        contrib = {j: _freeze(contrib[j]) for j in T}
        for j, R in contrib.items():
            if len(R) != params.alpha or any(len(r) != params.beta for r in R):
                raise BadParams("contribution matrices must be alpha x beta")
        A = _assembly(fp, blocks, params, i, T, contrib)
        if A is None:
            raise BadParams(f"contributions for node {i} from {T} cannot rebuild it")
        table[(i, T)] = RepairEntry(i, T, contrib, A)
    return table


def search_repair_table(params: CodeParams, p: int, blocks, limit: int = 200_000) -> dict:
    """Exhaustive search for beta = 1 contribution vectors.

    Each helper's vector ranges over projective representatives of
    F_p^alpha. Intended for small explicit codes published without repair
    tables; raises :class:`BadParams` if some ``(i, T)`` has no solution.
    """
    if params.beta != 1:
        raise BadParams("repair-table search only supports beta = 1")
    fp = prime_field(p)
    reps = []
    for v in itertools.product(range(p), repeat=params.alpha):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            reps.append(tuple((x,) for x in v))
    if len(reps) ** params.d > limit:
        raise BadParams("repair-table search space too large")
    table = {}
    for i in range(1, params.n + 1):
        others = [j for j in range(1, params.n + 1) if j != i]
        for T in itertools.combinations(others, params.d):
            for choice in itertools.product(reps, repeat=params.d):
                contrib = dict(zip(T, choice))
                A = _assembly(fp, blocks, params, i, T, contrib)
                if A is not None:
                    table[(i, T)] = RepairEntry(i, T, {j: _freeze(R) for j, R in contrib.items()}, A)
                    break
            else:
                raise BadParams(f"node {i} cannot be repaired from {T}")
    return table


# -- validation -------------------------------------------------------------

def validate_code(code: LinearRegenCode) -> ValidationReport:
    """Exhaustive check of node ranks, k-subset recovery and every repair."""
    pr = code.params
    fp = code.fp
    report = ValidationReport()
    for i in range(1, pr.n + 1):
        r = linalg.rank(fp, code.block(i))
        if r != pr.alpha:
            report.node_rank.append((i, r))
    for B in itertools.combinations(range(1, pr.n + 1), pr.k):
        report.checked_subsets += 1
        r = linalg.rank(fp, code.stacked(B))
        if r != pr.t:
            report.recovery.append((B, r))
    for i in range(1, pr.n + 1):
        for T in code.helper_sets(i):
            report.checked_repairs += 1
            entry = code.repair.get((i, T))
            if entry is None:
                report.repair.append((i, T, "missing table entry"))
                continue
            H = linalg.hstack(*(linalg.matmul(fp, code.block(j), entry.contributions[j]) for j in T))
            if _freeze(linalg.matmul(fp, H, entry.assembly)) != code.block(i):
                report.repair.append((i, T, "assembly does not reproduce G_i"))
    return report


# -- data path --------------------------------------------------------------

def _as_codes(field, values):
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            field.check(v)
            out.append(v.code)
        else:
            out.append(int(v))
    return out


def _times_fp(field, vec, M):
    """Row vector over GF(p^m) times an F_p matrix."""
    cols = len(M[0]) if M else 0
    out = [0] * cols
    add, scale = field.add, field.scale
    for v, row in zip(vec, M):
        if not v:
            continue
        for c, g in enumerate(row):
            if g:
                out[c] = add(out[c], scale(g, v))
    return out


def encode_codes(code: LinearRegenCode, field, y) -> list[list[int]]:
    if len(y) != code.params.t:
        raise LengthMismatch(f"data vector must have length t={code.params.t}")
    return [_times_fp(field, y, G) for G in code.blocks]


def encode(code: LinearRegenCode, field, y) -> list[tuple]:
    """``payload_i = y @ G_i`` for every node."""
    ys = _as_codes(field, y)
    return [tuple(FieldElement(field, v) for v in row) for row in encode_codes(code, field, ys)]


def recover_codes(code: LinearRegenCode, field, nodes, payloads) -> list[int]:
    pr = code.params
    nodes = tuple(nodes)
    if len(set(nodes)) != len(nodes):
        raise BadParams("duplicate node index")
    if len(nodes) < pr.k:
        raise InsufficientShares(f"{len(nodes)} shares given, {pr.k} required")
    if len(payloads) != len(nodes) or any(len(s) != pr.alpha for s in payloads):
        raise LengthMismatch("payloads must be alpha symbols per node")
    order = sorted(range(len(nodes)), key=lambda r: nodes[r])
    nodes = tuple(nodes[r] for r in order)
    z = [v for r in order for v in payloads[r]]
    dec = code._decoder(nodes)
    if dec is None:
        raise InsufficientShares(f"nodes {nodes} do not determine the data")
    left, checks = dec
    add, scale = field.add, field.scale
    for row in checks:
        acc = 0
        for g, v in zip(row, z):
            if g and v:
                acc = add(acc, scale(g, v))
        if acc:
            raise InconsistentShares("shares are not consistent with the code")
    y = []
    for row in left:
        acc = 0
        for g, v in zip(row, z):
            if g and v:
                acc = add(acc, scale(g, v))
        y.append(acc)
    return y


def recover_data(code: LinearRegenCode, field, nodes, payloads) -> tuple:
    """Unique ``y`` with ``y @ G_i == payload_i`` for every listed node."""
    pay = [_as_codes(field, s) for s in payloads]
    return tuple(FieldElement(field, v) for v in recover_codes(code, field, nodes, pay))


def contribution_codes(code, field, j, payload_j, i, T) -> list[int]:
    T = tuple(sorted(T))
    if j not in T:
        raise NotInRepairSet(f"helper {j} is not in repair set {T}")
    if i in T:
        raise NotInRepairSet(f"failed node {i} cannot help repair itself")
    entry = code.repair_entry(i, T)
    if len(payload_j) != code.params.alpha:
        raise LengthMismatch("helper payload must have alpha symbols")
    return _times_fp(field, payload_j, entry.contributions[j])


def repair_contribution(code: LinearRegenCode, field, j: int, payload_j, i: int, T) -> tuple:
    """The ``beta`` symbols helper ``j`` sends towards repairing node ``i``."""
    out = contribution_codes(code, field, j, _as_codes(field, payload_j), i, T)
    return tuple(FieldElement(field, v) for v in out)


def assemble_codes(code, field, i, T, contributions) -> list[int]:
    T = tuple(sorted(T))
    entry = code.repair_entry(i, T)
    pr = code.params
    if len(contributions) != pr.d or any(len(c) != pr.beta for c in contributions):
        raise WrongContributionCount(f"need {pr.d} contributions of {pr.beta} symbols")
    flat = [v for c in contributions for v in c]
    return _times_fp(field, flat, entry.assembly)


def repair_assemble(code: LinearRegenCode, field, i: int, T, contributions) -> tuple:
    """Rebuild node ``i`` from contributions ordered by helper index."""
    contrib = [_as_codes(field, c) for c in contributions]
    return tuple(FieldElement(field, v) for v in assemble_codes(code, field, i, T, contrib))


# -- built-in codes ---------------------------------------------------------

# 5 x 12 binary generator of the worked (4,2,3) MBR example, columns grouped
# three per node.
PAPER_EXAMPLE_GENERATOR = (
    (1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1),
    (0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1),
    (0, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1),
    (0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1),
)

# 4 x 8 generator over F_11 of the naive Shamir-then-encode example.
NAIVE_EXAMPLE_GENERATOR = (
    (1, 0, 0, 0, 0, 5, 1, 1),
    (0, 1, 0, 0, 2, 1, 9, 0),
    (0, 0, 1, 0, 1, 1, 2, 4),
    (0, 0, 0, 1, 1, 3, 0, 4),
)


def split_blocks(generator, n: int, alpha: int):
    return [[row[i * alpha:(i + 1) * alpha] for row in generator] for i in range(n)]


@functools.lru_cache(maxsize=None)
def paper_example_code(p: int = 2) -> LinearRegenCode:
    """The (n=4, k=2, d=3, alpha=3, beta=1) code with t = 5.

    Every pair of nodes shares exactly one stored column, so each helper
    sends the symbol it has in common with the failed node.
    """
    params = CodeParams.derive(4, 2, 3, 3, 1)
    blocks = split_blocks(PAPER_EXAMPLE_GENERATOR, 4, 3)
    contributions = {}
    for i in range(1, 5):
        T = tuple(j for j in range(1, 5) if j != i)
        target = {tuple(col) for col in zip(*blocks[i - 1])}
        contrib = {}
        for j in T:
            cols = list(zip(*blocks[j - 1]))
            c = next(c for c, col in enumerate(cols) if tuple(col) in target)
            contrib[j] = [[1 if r == c else 0] for r in range(3)]
        contributions[(i, T)] = contrib
    repair = build_repair_table(params, p, blocks, contributions)
    return LinearRegenCode(params, p, blocks, repair, name="paper-example-423")


@functools.lru_cache(maxsize=None)
def naive_example_code() -> LinearRegenCode:
    """The (4, 2, 3) code over F_11 with alpha = 2 used by the naive demo."""
    params = CodeParams.derive(4, 2, 3, 2, 1)
    blocks = split_blocks(NAIVE_EXAMPLE_GENERATOR, 4, 2)
    repair = search_repair_table(params, 11, blocks)
    return LinearRegenCode(params, 11, blocks, repair, name="naive-example-423")


def mbr_t(k: int, d: int) -> int:
    return k * (2 * d - k + 1) // 2


def product_matrix_points(n: int, p: int) -> tuple:
    return tuple(i % p for i in range(n))


@functools.lru_cache(maxsize=None)
def product_matrix_mbr(n: int, k: int, d: int, p: int) -> LinearRegenCode:
    """Product-matrix MBR code over F_p with beta = 1 and alpha = d.

    The d x d symmetric message matrix is ``[[S, V], [V^T, 0]]`` with ``S``
    a symmetric k x k block and ``V`` a k x (d-k) block; node ``i`` stores
    ``psi_i @ M`` with ``psi_i`` the Vandermonde row of the point ``i - 1``.
    """
    if not is_prime(p):
        raise BadParams(f"{p} is not prime")
    if not 1 <= k <= d <= n - 1:
        raise BadParams(f"need 1 <= k <= d <= n-1, got n={n} k={k} d={d}")
    if p < n:
        raise FieldTooSmall(f"need p >= n distinct points, got p={p} < n={n}")
    t = mbr_t(k, d)
    params = CodeParams(n, k, d, d, 1, t)
    assert params.t == storage_t(k, d, d, 1)
    fp = prime_field(p)

    # message matrix entries -> index into y (None for the zero block)
    var = {}
    idx = 0
    for r in range(k):
        for c in range(r, k):
            var[(r, c)] = var[(c, r)] = idx
            idx += 1
    for r in range(k):
        for c in range(k, d):
            var[(r, c)] = var[(c, r)] = idx
            idx += 1
    assert idx == t

    xs = product_matrix_points(n, p)
    psi = [[pow(x, e, p) for e in range(d)] for x in xs]
    blocks = []
    for i in range(n):
        G = [[0] * d for _ in range(t)]
        for (r, c), v in var.items():
            G[v][c] = (G[v][c] + psi[i][r]) % p
        blocks.append(G)

    repair = {}
    for i in range(1, n + 1):
        others = [j for j in range(1, n + 1) if j != i]
        col = [[psi[i - 1][r]] for r in range(d)]
        for T in itertools.combinations(others, d):
            vander = [psi[j - 1] for j in T]
            A = linalg.transpose(linalg.inverse(fp, vander))
            contrib = {j: _freeze(col) for j in T}
            repair[(i, T)] = RepairEntry(i, T, contrib, _freeze(A))
    return LinearRegenCode(params, p, blocks, repair, name="product-matrix")


def _mds_parity(t: int, N: int, p: int):
    """``t x (N - t)`` block ``P`` making ``[I | P]`` MDS over F_p."""
    r = N - t
    if r == 0:
        return [[] for _ in range(t)]
    if r == 1:
        return [[1] for _ in range(t)]
    if p < N:
        raise FieldTooSmall(f"no [{N},{t}] MDS code known over F_{p}")
    # Cauchy matrix on disjoint point sets
    xs, ys = range(t), range(t, N)
    return [[pow((x - y) % p, p - 2, p) for y in ys] for x in xs]


@functools.lru_cache(maxsize=None)
def repair_by_transfer_mbr(n: int, k: int, p: int) -> LinearRegenCode:
    """MBR code with ``d = n - 1`` built on the edges of the complete graph.

    An ``[n(n-1)/2, t]`` MDS codeword is laid on the edges; node ``i`` keeps
    the symbols of its ``n - 1`` incident edges. A helper repairs node ``i``
    by forwarding the symbol of their shared edge, so no arithmetic happens
    during repair. A single parity symbol suffices when ``k = n - 2``, which
    makes the construction available over F_2.
    """
    if not is_prime(p):
        raise BadParams(f"{p} is not prime")
    d = n - 1
    if not 1 <= k <= d:
        raise BadParams(f"need 1 <= k <= n-1, got n={n} k={k}")
    t = mbr_t(k, d)
    params = CodeParams(n, k, d, d, 1, t)
    edges = list(itertools.combinations(range(1, n + 1), 2))
    P = _mds_parity(t, len(edges), p)
    full = [[1 if r == c else 0 for c in range(t)] + list(P[r]) for r in range(t)]
    incident = {i: [e for e, (a, b) in enumerate(edges) if i in (a, b)] for i in range(1, n + 1)}
    blocks = [[[row[e] for e in incident[i]] for row in full] for i in range(1, n + 1)]
    contributions = {}
    for i in range(1, n + 1):
        T = tuple(j for j in range(1, n + 1) if j != i)
        contrib = {}
        for j in T:
            e = edges.index((min(i, j), max(i, j)))
            pos = incident[j].index(e)
            contrib[j] = [[1 if r == pos else 0] for r in range(d)]
        contributions[(i, T)] = contrib
    repair = build_repair_table(params, p, blocks, contributions)
    return LinearRegenCode(params, p, blocks, repair, name="repair-by-transfer")


def mbr_code(n: int, k: int, d: int, p: int) -> LinearRegenCode:
    """Product-matrix when ``p >= n``, otherwise repair-by-transfer if possible."""
    if p >= n:
        return product_matrix_mbr(n, k, d, p)
    if d == n - 1:
        return repair_by_transfer_mbr(n, k, p)
    raise FieldTooSmall(f"no MBR construction for (n={n}, d={d}) over F_{p}")
