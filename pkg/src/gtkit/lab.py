"""Verification drivers for the dimension and decomposition claims.

Each driver returns a VerificationReport.  Set-theoretic equalities
V(I) = V(J) are checked as radical equalities over the algebraic closure:
every generator of one side lies in the radical of the other.  A union
V(J_1) u ... u V(J_r) covers V(I) exactly when every product f_1 ... f_r
with f_k a generator of J_k lies in rad(I).
"""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .errors import BudgetExceeded
from .field import DEFAULT_PRIME, GF, QQ, Field
from .groebner import UNLIMITED, Budget, Ideal, krull_dimension, membership, radical_membership
from .poly import Polynomial, Ring, matrix_ring, var_name
from .regularity import (equidimensional_by_ci, is_regular_sequence, leading_form_inference,
                         project_out_variables)
from .systems import (chi, d, e, gamma_bar, named_hom, partial_count, partial_system, recursion_branches,
                      sigma)

VERIFIED_EXACT = "verified_exact"
VERIFIED_MODULAR = "verified_modular"
INCONCLUSIVE = "inconclusive_budget"
FAILED = "FAILED"

SUPPORTED = {
    "ovsienko": range(2, 5),
    "weak": range(2, 6),
    "components": range(2, 5),
    "zelobenko": range(1, 5),
    "partial": range(1, 5),
}


class Counterexample(Exception):
    """Raised inside a check; carries a replayable payload."""

    def __init__(self, payload: dict):
        super().__init__(payload.get("what", "counterexample"))
        self.payload = payload


@dataclass
class VerificationReport:
    claim: str
    statement: str
    inputs: dict
    verdict: str
    artifacts: dict = field(default_factory=dict)
    wall_time: float = 0.0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.verdict in (VERIFIED_EXACT, VERIFIED_MODULAR)

    def to_json(self) -> dict:
        out = {"claim": self.claim, "statement": self.statement, "inputs": self.inputs,
               "verdict": self.verdict, "artifacts": self.artifacts, "wall_time": round(self.wall_time, 6)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class _Run:
    """Collects sub-check outcomes and folds them into one verdict."""

    def __init__(self, claim: str, statement: str, inputs: dict, field_: Field):
        self.claim, self.statement, self.inputs = claim, statement, inputs
        self.modular = bool(field_.characteristic)
        self.artifacts: Dict[str, object] = {}
        self.failures: List[dict] = []
        self.budget_hits: List[str] = []
        self.t0 = time.monotonic()

    def check(self, name: str, fn: Callable[[], object]):
        try:
            out = fn()
        except BudgetExceeded as exc:
            self.budget_hits.append(name)
            self.artifacts[name] = {"budget_exceeded": str(exc)}
            return None
        except Counterexample as exc:
            self.failures.append({"check": name, **exc.payload})
            self.artifacts[name] = {"ok": False}
            return None
        self.artifacts[name] = out
        return out

    def require(self, cond: bool, payload: dict):
        if not cond:
            self.failures.append(payload)

    def report(self) -> VerificationReport:
        if self.failures:
            verdict = FAILED
        elif self.budget_hits:
            verdict = INCONCLUSIVE
        else:
            verdict = VERIFIED_MODULAR if self.modular else VERIFIED_EXACT
        if self.budget_hits:
            self.artifacts["budget_exceeded_in"] = self.budget_hits
        cx = {"failures": self.failures} if self.failures else None
        return VerificationReport(self.claim, self.statement, self.inputs, verdict, self.artifacts,
                                  time.monotonic() - self.t0, cx)


def _inputs(**kw) -> dict:
    out = {}
    for k, v in kw.items():
        if isinstance(v, Field):
            v = v.to_json()
        elif isinstance(v, Budget):
            v = v.to_json()
        out[k] = v
    return out


def _check_range(claim: str, n: int):
    if n not in SUPPORTED[claim]:
        r = SUPPORTED[claim]
        raise ValueError(f"{claim}: n must be in [{r.start}, {r.stop - 1}], got {n}")


def _texts(gs: Sequence[Polynomial]) -> List[str]:
    return [g.to_text() for g in gs]


def _pmap(fn, items, jobs: int):
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# -- radical equalities of unions


def pieces_inside(I_gens: Sequence[Polynomial], pieces: Dict[str, Sequence[Polynomial]],
                  budget: Budget = UNLIMITED) -> Dict[str, bool]:
    """V(piece) subset V(I) for each piece: generators of I in rad(piece)."""
    out = {}
    for name, gens in pieces.items():
        J = Ideal(gens)
        out[name] = all(radical_membership(g, J, budget) for g in I_gens)
    return out


def union_covers(I_gens: Sequence[Polynomial], pieces: Sequence[Sequence[Polynomial]],
                 budget: Budget = UNLIMITED) -> dict:
    """V(I) subset union of V(piece): all one-per-piece products in rad(I).

    Piece generators already in rad(I) make every product through them
    trivially a member, so only the others are multiplied out.  Products
    are taken over sets of distinct factors (radical membership ignores
    multiplicities) and supersets of an already verified factor set are
    skipped.
    """
    I = Ideal(I_gens)
    member_cache: Dict[Polynomial, bool] = {}

    def in_rad(f):
        if f not in member_cache:
            member_cache[f] = radical_membership(f, I, budget)
        return member_cache[f]

    extras = []
    for gens in pieces:
        ex = [g for g in gens if not in_rad(g)]
        if not ex:
            return {"covers": True, "products_checked": 0, "reason": "a piece contains V(I)"}
        extras.append(ex)
    verified: List[frozenset] = []
    checked = 0
    for choice in itertools.product(*extras):
        S = frozenset(choice)
        if any(v <= S for v in verified):
            continue
        prod = None
        for f in sorted(S, key=lambda p: p.to_text()):
            prod = f if prod is None else prod * f
        checked += 1
        if not in_rad(prod):
            return {"covers": False, "products_checked": checked,
                    "witness_factors": [f.to_text() for f in sorted(S, key=lambda p: p.to_text())]}
        verified.append(S)
    return {"covers": True, "products_checked": checked}


def radical_union_equal(I_gens, pieces: Dict[str, Sequence[Polynomial]], budget: Budget = UNLIMITED) -> dict:
    inside = pieces_inside(I_gens, pieces, budget)
    cover = union_covers(I_gens, list(pieces.values()), budget)
    return {"inside": inside, "cover": cover, "equal": all(inside.values()) and cover["covers"]}


def hom_maps_onto(h, src_gens, tgt_gens, budget: Budget = UNLIMITED) -> dict:
    """h(I_src) subset I_tgt and h(I_tgt) subset I_src for an involution h.

    Falls back to radical membership when plain membership fails, and
    records which notion succeeded.
    """
    R = h.source
    x = {v: R.gen(v) for v in R.variables}
    involution = all(h(h(p)) == p for p in x.values())

    def contained(gens, target):
        J = Ideal(target)
        kinds = []
        for g in gens:
            img = h(g)
            if membership(img, J, budget):
                kinds.append("ideal")
            elif radical_membership(img, J, budget):
                kinds.append("radical")
            else:
                return False, img.to_text()
        return True, "ideal" if all(k == "ideal" for k in kinds) else "radical"

    fwd, fwd_kind = contained(src_gens, tgt_gens)
    bwd, bwd_kind = contained(tgt_gens, src_gens)
    return {"hom": h.name, "involution": involution, "forward": fwd, "forward_kind": fwd_kind,
            "backward": bwd, "backward_kind": bwd_kind, "onto": involution and fwd and bwd}


def _ci_dimension(gens, budget: Budget, ambient: int) -> dict:
    cert = equidimensional_by_ci(gens, ambient=ambient, budget=budget)
    if cert.regularity.verdict == "budget":
        raise BudgetExceeded("pairs", None, f"regularity at step {cert.regularity.budget_at}")
    return {"issued": cert.issued, "dim": cert.concluded_dim, "length": len(gens),
            "failed_at": cert.regularity.failed_at}


# -- Ovsienko


def verify_ovsienko(n: int, field: Field | None = None, budget: Budget = UNLIMITED) -> VerificationReport:
    """GTS_n equidimensional of dimension n(n-1)/2 via a homogeneous regular sequence."""
    _check_range("ovsienko", n)
    F = field or (GF(DEFAULT_PRIME) if n == 4 else QQ)
    G = gamma_bar(n, F)
    run = _Run("ovsienko", f"the Gelfand-Tsetlin variety for gl_{n} is equidimensional of dimension {d(n - 1)}",
               _inputs(n=n, field=F, budget=budget), F)
    expected = d(n - 1)
    run.artifacts["generators"] = _texts(G.generators)
    run.artifacts["expected_dim"] = expected

    def ci():
        cert = equidimensional_by_ci(G.generators, budget=budget)
        if cert.regularity.verdict == "budget":
            raise BudgetExceeded("pairs", None, f"step {cert.regularity.budget_at}")
        if not cert.issued or cert.concluded_dim != expected:
            raise Counterexample({"what": "regularity certificate", "certificate": cert.to_json()})
        return cert.to_json()

    run.check("ci_certificate", ci)

    def krull():
        r = krull_dimension(G.ideal(), budget)
        if r.krull_dim != expected:
            raise Counterexample({"what": "Krull dimension", "got": r.krull_dim, "expected": expected})
        return r.to_json()

    run.check("krull_dimension", krull)

    R = G.ring
    x = lambda i, j: R.gen(var_name(i, j, n))  # noqa: E731
    g = lambda i, j: G[f"gamma[{i},{j}]"]  # noqa: E731
    if n == 2:
        pieces = {"V(x11,x22,x21)": [x(1, 1), x(2, 2), x(2, 1)],
                  "V(x11,x22,x12)": [x(1, 1), x(2, 2), x(1, 2)]}
        run.check("components", lambda: _decomposition(G.generators, pieces, budget, expected, R.nvars))
    elif n == 3:
        V3 = [g(1, 1), g(2, 1), x(1, 2), g(3, 1), g(3, 2), g(3, 3)]
        W = [g(1, 1), g(2, 1), x(2, 1), g(3, 1), g(3, 2), g(3, 3)]
        run.check("components", lambda: _decomposition(G.generators, {"V3": V3, "W": W}, budget, expected, R.nvars))
        run.check("transpose_V3_W", lambda: _must(hom_maps_onto(named_hom("transpose", 3, field=F), V3, W, budget),
                                                  "onto", "transpose does not exchange V3 and W"))
    return run.report()


def _must(res: dict, key: str, what: str) -> dict:
    if not res[key]:
        raise Counterexample({"what": what, "detail": res})
    return res


def _decomposition(I_gens, pieces, budget, expected_dim, ambient) -> dict:
    res = radical_union_equal(I_gens, pieces, budget)
    dims = {}
    for name, gens in pieces.items():
        dims[name] = _ci_dimension(gens, budget, ambient)
    res["piece_dims"] = dims
    if not res["equal"]:
        raise Counterexample({"what": "decomposition", "detail": res})
    bad = [k for k, v in dims.items() if v["dim"] != expected_dim]
    if bad:
        raise Counterexample({"what": "piece dimension", "pieces": bad, "detail": dims})
    return res


# -- weak variety


def replay_weak_recursion(n: int, field: Field = QQ) -> dict:
    """Replay the induction step for V_n polynomial by polynomial.

    For each branch: sigma_nn splits as a monomial whose factor heads the
    branch's substitution set X; projecting sigma_n2..sigma_{n,n-1} at X
    gives exactly the images of sigma_{n-1,2..n-1} under the branch hom.
    """
    if not 3 <= n <= 6:
        raise ValueError("recursion replay supports 3 <= n <= 6")
    S, P = sigma(n, field), sigma(n - 1, field)
    R = S.ring
    top = S.generators[-1]
    factors = [var_name(1, n, n)] + [var_name(t, t - 1, n) for t in range(2, n + 1)]
    mono = R.one()
    for v in factors:
        mono = mono * R.gen(v)
    split_ok = top == mono
    branches = []
    ok = split_ok
    for (name, t, X), factor in zip(recursion_branches(n), factors):
        proj = project_out_variables(S.generators[:-1], X)
        small = proj[0].ring if proj else Ring([v for v in R.variables if v not in X], field)
        h = named_hom(name, n, t=t, field=field)
        imgs = [h(p) for p in P.generators]
        matches = []
        for a, b in zip(proj, imgs):
            try:
                matches.append(b.change_ring(small) == a)
            except (KeyError, ValueError):
                matches.append(False)
        entry = {
            "hom": h.name, "t": t, "X": list(X), "split_factor": factor,
            "factor_heads_X": X[0] == factor,
            "ambient_after_projection": small.nvars, "expected_ambient": e(n - 1),
            "projected_nonzero": all(bool(p) for p in proj),
            "matches": matches,
        }
        entry["ok"] = (all(matches) and len(matches) == n - 2 and entry["factor_heads_X"]
                       and small.nvars == e(n - 1) and entry["projected_nonzero"])
        ok = ok and entry["ok"]
        branches.append(entry)
    return {"n": n, "monomial_split": split_ok, "branches": branches, "ok": ok}


def verify_weak(n: int, field: Field = QQ, budget: Budget = UNLIMITED) -> VerificationReport:
    """V_n = V(sigma_n2..sigma_nn) in k^{e(n)} is equidimensional of dimension d(n-1)."""
    _check_range("weak", n)
    S = sigma(n, field)
    expected = d(n - 1)
    run = _Run("weak", f"the weak variety V_{n} in k^{e(n)} is equidimensional of dimension {expected}",
               _inputs(n=n, field=field, budget=budget), field)
    run.artifacts["generators"] = _texts(S.generators)
    run.artifacts["ambient"] = e(n)
    run.artifacts["expected_dim"] = expected

    def ci():
        res = _ci_dimension(S.generators, budget, e(n))
        if not res["issued"] or res["dim"] != expected:
            raise Counterexample({"what": "regularity certificate", "detail": res})
        return res

    run.check("ci_certificate", ci)

    def krull():
        r = krull_dimension(S.ideal(), budget)
        if r.krull_dim != expected:
            raise Counterexample({"what": "Krull dimension", "got": r.krull_dim, "expected": expected})
        return r.to_json()

    run.check("krull_dimension", krull)
    if n == 2:
        R = S.ring
        pieces = {"V(x21)": [R.gen("x21")], "V(x12)": [R.gen("x12")]}
        run.check("components", lambda: _decomposition(S.generators, pieces, budget, expected, R.nvars))
    else:
        run.check("recursion_replay", lambda: _must(replay_weak_recursion(n, field), "ok", "recursion replay"))
    return run.report()


# -- regular components


@dataclass
class RegularComponentCandidate:
    variables: List[str]
    contains_all_diagonals: bool
    one_per_offdiagonal_pair: bool
    lower_choices: List[str]

    def to_json(self):
        return dict(self.__dict__)


def regular_component_candidates(n: int) -> List[RegularComponentCandidate]:
    diag = [var_name(i, i, n) for i in range(1, n + 1)]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out = []
    for picks in itertools.product((0, 1), repeat=len(pairs)):
        chosen, lower = [], []
        for (i, j), p in zip(pairs, picks):
            v = var_name(j, i, n) if p else var_name(i, j, n)
            chosen.append(v)
            if p:
                lower.append(v)
        S = diag + chosen
        flags_pairs = all((var_name(i, j, n) in S) != (var_name(j, i, n) in S) for i, j in pairs)
        out.append(RegularComponentCandidate(S, all(v in S for v in diag), flags_pairs, lower))
    return out


def _elementary_point(n: int, entries) -> Dict[str, int]:
    pt = {var_name(i, j, n): 0 for i in range(1, n + 1) for j in range(1, n + 1)}
    for i, j in entries:
        pt[var_name(i, j, n)] += 1
    return pt


def _free_digraph_acyclic(n: int, S: Sequence[str]) -> bool:
    """Edges i -> j for the off-diagonal entries left free by S; True if acyclic."""
    from graphlib import CycleError, TopologicalSorter
    free = {i: set() for i in range(1, n + 1)}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and var_name(i, j, n) not in S:
                free[j].add(i)
    try:
        tuple(TopologicalSorter(free).static_order())
    except CycleError:
        return False
    return True


def enumerate_regular_components(n: int, field: Field = QQ) -> VerificationReport:
    """Enumerate the coordinate candidates and test each against GTS_n.

    Containment is decided by substitution.  It is cross-checked against
    an independent criterion: a coordinate subspace consists of strongly
    nilpotent matrices iff the digraph of its free off-diagonal entries is
    acyclic, so exactly n! of the 2^{d(n-1)} candidates are contained.
    """
    _check_range("components", n)
    G = gamma_bar(n, field)
    expected = d(n - 1)
    run = _Run("components", f"all {2 ** d(n - 1)} coordinate candidates for gl_{n} lie in GTS_{n}, "
               f"have dimension {expected} and are permutation-isomorphic to V_<=",
               _inputs(n=n, field=field), field)
    cands = regular_component_candidates(n)
    run.require(len(cands) == 2 ** d(n - 1), {"what": "candidate count", "got": len(cands)})
    upper = sorted([var_name(i, j, n) for i in range(1, n + 1) for j in range(i, n + 1)])
    seen_upper = False
    rows = []
    outside = []
    for c in cands:
        zeroed = [g.substitute_zero(c.variables) for g in G.generators]
        contained = all(not z for z in zeroed)
        acyclic = _free_digraph_acyclic(n, c.variables)
        dim = n * n - len(c.variables)
        # swapping x_ij <-> x_ji on the lower picks maps V(S) onto V_<=
        swap = {v: var_name(*reversed(_ij(v)), n) for v in c.lower_choices}
        image = sorted(swap.get(v, v) for v in c.variables)
        iso = image == upper
        seen_upper = seen_upper or sorted(c.variables) == upper
        row = {"S": c.variables, "contained": contained, "acyclic": acyclic, "dim": dim, "iso_to_upper": iso,
               "flags": [c.contains_all_diagonals, c.one_per_offdiagonal_pair]}
        rows.append(row)
        if contained != acyclic:
            raise AssertionError(f"substitution and acyclicity disagree on {c.variables}")
        run.require(dim == expected and iso and c.contains_all_diagonals and c.one_per_offdiagonal_pair,
                     {"what": "candidate shape", "candidate": row})
        if not contained:
            bad = [(lab, z.to_text()) for lab, z in zip(G.labels, zeroed) if z]
            outside.append({"S": c.variables, "nonvanishing": [{"generator": lab, "restriction": t}
                                                               for lab, t in bad]})
    run.require(seen_upper, {"what": "V_<= missing from candidates"})
    if outside:
        run.failures.append({"what": "candidates not contained in GTS", "count": len(outside),
                             "candidates": outside})
    run.artifacts["candidates"] = rows
    run.artifacts["count"] = len(cands)
    run.artifacts["contained_count"] = sum(r["contained"] for r in rows)
    run.artifacts["contained_all_dim_and_iso"] = all(r["dim"] == expected and r["iso_to_upper"]
                                                     for r in rows if r["contained"])
    witnesses = []
    for i in range(1, n + 1):
        val = G[f"gamma[{i},1]"].evaluate(_elementary_point(n, [(i, i)]))
        witnesses.append({"matrix": f"E{i}{i}", "generator": f"gamma[{i},1]", "value": str(val)})
        run.require(val != 0, {"what": "diagonal witness vanished", "i": i})
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            val = G[f"gamma[{j},2]"].evaluate(_elementary_point(n, [(i, j), (j, i)]))
            witnesses.append({"matrix": f"E{i}{j}+E{j}{i}", "generator": f"gamma[{j},2]", "value": str(val)})
            run.require(val != 0, {"what": "off-diagonal witness vanished", "pair": [i, j]})
    run.artifacts["necessity_witnesses"] = witnesses
    return run.report()


def _ij(v: str):
    from .poly import parse_var_name
    return parse_var_name(v)


# -- Zelobenko


def newton_identities(i: int) -> dict:
    """p_k + c_1 p_{k-1} + ... + c_{k-1} p_1 + k c_k = 0 for k = 1..i, exactly over QQ.

    p_k = gamma_bar_ik, c_k = chi_ik.
    """
    if not 1 <= i <= 6:
        raise ValueError("Newton identity check supports 1 <= i <= 6")
    G, C = gamma_bar(i, QQ), chi(i, QQ)
    p = [None] + [G[f"gamma[{i},{k}]"] for k in range(1, i + 1)]
    c = [None] + [C[f"chi[{i},{k}]"] for k in range(1, i + 1)]
    results = []
    for k in range(1, i + 1):
        acc = p[k] + c[k].scale(k)
        for m in range(1, k):
            acc = acc + c[m] * p[k - m]
        results.append(not acc)
    return {"i": i, "identities": results, "ok": all(results)}


def verify_zelobenko(i: int, field: Field | None = None, budget: Budget = UNLIMITED) -> VerificationReport:
    """V(chi_i1..chi_ii) = V(gamma_bar_i1..gamma_bar_ii) by two-sided radical membership."""
    _check_range("zelobenko", i)
    F = field or (GF(DEFAULT_PRIME) if i == 4 else QQ)
    G, C = gamma_bar(i, F), chi(i, F)
    gs = [G[f"gamma[{i},{k}]"] for k in range(1, i + 1)]
    cs = [C[f"chi[{i},{k}]"] for k in range(1, i + 1)]
    run = _Run("zelobenko", f"V(chi_{i}1..chi_{i}{i}) = V(gamma_{i}1..gamma_{i}{i})",
               _inputs(i=i, field=F, budget=budget), F)
    run.artifacts["gamma"] = _texts(gs)
    run.artifacts["chi"] = _texts(cs)

    def side(src, tgt, label):
        J = Ideal(tgt)
        res = [radical_membership(g, J, budget) for g in src]
        if not all(res):
            raise Counterexample({"what": f"{label} not in radical", "flags": res})
        return res

    run.check("gamma_in_rad_chi", lambda: side(gs, cs, "gamma"))
    run.check("chi_in_rad_gamma", lambda: side(cs, gs, "chi"))
    nw = run.check("newton", lambda: _must(newton_identities(i), "ok", "Newton identity"))
    if nw is not None:
        run.artifacts["ideal_equality_char0"] = nw["ok"]
    return run.report()


# -- partial varieties


def random_beta(n: int, k: int, rng: random.Random) -> List[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(partial_count(n, k))]


def expected_partial_dim(n: int, k: int) -> int:
    return n * n - n * k + d(k - 1)


def _partial_one(args) -> dict:
    n, k, beta, F, family, budget, krull_check = args
    sysm = partial_system(n, k, beta, family=family, field=F)
    expected = expected_partial_dim(n, k)
    out = {"beta": [str(b) for b in beta], "generators": _texts(sysm.generators)}
    try:
        lfi = leading_form_inference(sysm.generators, budget=budget, cross_check=False)
    except BudgetExceeded as exc:
        out.update(status="budget", detail=str(exc))
        return out
    out["leading_forms_regular"] = lfi.verdict == "regular"
    out["concluded_dim"] = n * n - len(sysm.generators) if lfi.verdict == "regular" else None
    out["expected_dim"] = expected
    ok = out["concluded_dim"] == expected
    if krull_check:
        try:
            kd = krull_dimension(sysm.ideal(), budget).krull_dim
            out["krull_dim"] = kd
            ok = ok and kd == expected
        except BudgetExceeded as exc:
            out["krull_dim"] = None
            out["krull_budget"] = str(exc)
    if lfi.verdict == "inconclusive" and lfi.forms_certificate and lfi.forms_certificate.verdict == "budget":
        out["status"] = "budget"
    else:
        out["status"] = "ok" if ok else "failed"
    return out


def verify_partial(n: int, k: int, betas: Sequence[Sequence] | None = None, trials: int = 3, seed: int = 0,
                   field: Field | None = None, family: str = "gamma_bar", budget: Budget = UNLIMITED,
                   krull_check: bool | None = None, jobs: int = 1) -> VerificationReport:
    """The partial variety V(g_ij - beta_ij : i > n-k) has dimension n^2 - nk + d(k-1)."""
    _check_range("partial", n)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    F = field or (GF(DEFAULT_PRIME) if n >= 4 else QQ)
    if betas is None:
        rng = random.Random(seed)
        betas = [random_beta(n, k, rng) for _ in range(trials)]
    betas = [list(b) for b in betas]
    if krull_check is None:
        krull_check = n <= 3
    expected = expected_partial_dim(n, k)
    run = _Run("partial", f"partial varieties for gl_{n}, k={k}, have dimension {expected}",
               _inputs(n=n, k=k, field=F, family=family, seed=seed, trials=len(betas), budget=budget), F)
    results = _pmap(_partial_one, [(n, k, b, F, family, budget, krull_check) for b in betas], jobs)
    run.artifacts["expected_dim"] = expected
    run.artifacts["trials"] = results
    for r in results:
        if r["status"] == "budget":
            run.budget_hits.append(f"beta={r['beta']}")
        run.require(r["status"] != "failed", {"what": "partial dimension", "trial": r})
    return run.report()


# -- gl4 decomposition


def gl4_pieces(F: Field = GF(DEFAULT_PRIME)) -> dict:
    G = gamma_bar(4, F)
    R = G.ring
    x = lambda i, j: R.gen(var_name(i, j, 4))  # noqa: E731
    g = lambda i, j: G[f"gamma[{i},{j}]"]  # noqa: E731
    head = [g(1, 1), g(2, 1)]
    tail = [g(4, j) for j in range(1, 5)]
    mk = lambda *mid: head + list(mid) + tail  # noqa: E731
    pieces = {
        "V4": mk(x(1, 2), g(3, 1), x(2, 3), x(1, 3)),
        "A": mk(x(1, 2), g(3, 1), x(3, 2), x(1, 3)),
        "B": mk(x(1, 2), g(3, 1), g(3, 2), x(2, 1)),
        "C": mk(x(1, 2), g(3, 1), g(3, 2), x(3, 2)),
        "D": mk(x(2, 1), g(3, 1), g(3, 2), g(3, 3)),
    }
    unions = {
        "V4uAuBuC": mk(x(1, 2), g(3, 1), g(3, 2), g(3, 3)),
        "V4uA": mk(x(1, 2), g(3, 1), g(3, 2), x(1, 3)),
    }
    return {"gts": G.generators, "ring": R, "pieces": pieces, "unions": unions, "x": x, "g": g}


def b_chain(F: Field = GF(DEFAULT_PRIME)) -> List[dict]:
    """The successive hyperplane sections of B and their two-piece splits."""
    P = gl4_pieces(F)
    x, g = P["x"], P["g"]
    omega = [x(1, 1), x(2, 2), x(1, 2), x(3, 3), x(2, 1), x(4, 4)]
    L = [x(1, 3) - x(1, 4), x(3, 1) - x(4, 1)]
    q = x(3, 2) * x(2, 4) + x(4, 2) * x(2, 3)
    B = P["pieces"]["B"]
    B1 = B + L
    B1bar = L + omega + [g(3, 2), g(4, 2), g(4, 3), x(3, 1) * x(1, 3)]
    B1hat = L + omega + [g(3, 2), g(4, 2), g(4, 3), q]
    B2 = B1hat + [x(4, 3) - x(3, 4)]
    B2bar = [x(4, 3) - x(3, 4)] + L + [g(3, 2), g(4, 2), x(3, 1) * x(1, 3), q] + omega
    B2hat = [x(4, 3)] + L + omega + [g(3, 2), g(4, 2), x(3, 4), q]
    B3 = B2hat + [x(2, 3) - x(3, 2)]
    B3bar = [x(2, 3) - x(3, 2), x(4, 3)] + L + omega + [g(3, 2), g(4, 2), x(3, 4), x(2, 3)]
    B3hat = [x(2, 3) - x(3, 2), x(4, 3)] + L + omega + [g(3, 2), g(4, 2), x(3, 4), x(2, 4) + x(4, 2)]
    B4 = B3hat + [x(2, 3)]
    B4bar = [x(2, 3), x(3, 2), x(4, 3), x(1, 3) - x(1, 4), x(4, 1)] + omega + [x(3, 1), x(2, 4), x(3, 4), x(4, 2)]
    B4hat = [x(2, 3), x(3, 2), x(4, 3), x(1, 4), x(3, 1) - x(4, 1)] + omega + [x(1, 3), x(2, 4), x(3, 4), x(4, 2)]
    # on B1, gamma_44 = -4 det X and det X = x13 x31 (x24 - x23)(x42 - x32)
    B1hat_det = L + omega + [g(3, 2), g(4, 2), g(4, 3), (x(2, 4) - x(2, 3)) * (x(4, 2) - x(3, 2))]
    probe = {"x13": 1, "x14": 1, "x31": 1, "x41": 1, "x23": 1, "x32": -1, "x34": 1, "x43": -1}
    return [
        {"level": 1, "whole": B1, "bar": B1bar, "hat": B1hat, "dims": {"whole": 4, "bar": 4},
         "alternative_hat": B1hat_det, "probe_points": [probe]},
        {"level": 2, "whole": B2, "bar": B2bar, "hat": B2hat, "dims": {"whole": 3, "bar": 3}},
        {"level": 3, "whole": B3, "bar": B3bar, "hat": B3hat, "dims": {"whole": 2, "bar": 2}},
        {"level": 4, "whole": B4, "bar": B4bar, "hat": B4hat, "dims": {"whole": 1, "bar": 1, "hat": 1},
         "terminal": True},
    ]


def _linear_subspace_dim(gens: Sequence[Polynomial]) -> Optional[int]:
    from .linalg import dense_rank
    if any(gg.total_degree() != 1 or not gg.is_homogeneous()[0] for gg in gens):
        return None
    R = gens[0].ring
    M = [[gg.terms.get(tuple(int(a == k) for a in range(R.nvars)), 0) for k in range(R.nvars)] for gg in gens]
    return R.nvars - dense_rank(M, R.field)


def _points_outside(level: int, points) -> List[dict]:
    """Rational points on a piece where some generator of the whole is nonzero (checked over QQ)."""
    lev = b_chain(QQ)[level - 1]
    R = lev["whole"][0].ring
    out = []
    for pt in points:
        full = {v: QQ.convert(pt.get(v, 0)) for v in R.variables}
        for piece in ("bar", "hat"):
            if any(p.evaluate(full) for p in lev[piece]):
                continue
            vals = {p.to_text(): str(p.evaluate(full)) for p in lev["whole"] if p.evaluate(full)}
            if vals:
                out.append({"piece": piece, "point": {k: str(v) for k, v in pt.items()}, "nonzero": vals})
    return out


def _b_level(args) -> dict:
    lev, budget = args
    amb = lev["whole"][0].ring.nvars
    out = {"level": lev["level"], "ambient": amb, "generator_counts":
           {k: len(lev[k]) for k in ("whole", "bar", "hat")}}
    split = radical_union_equal(lev["whole"], {"bar": lev["bar"], "hat": lev["hat"]}, budget)
    out["split"] = split
    dims = {k: krull_dimension(Ideal(lev[k]), budget).krull_dim for k in ("whole", "bar", "hat")}
    out["krull_dims"] = dims
    out["stated_dims"] = lev["dims"]
    ci = {}
    for k in ("bar", "hat"):
        ci[k] = _ci_dimension(lev[k], budget, amb)
    out["ci"] = ci
    ok = split["equal"] and all(dims[k] == v for k, v in lev["dims"].items())
    if not split["equal"]:
        out["outside_points"] = _points_outside(lev["level"], lev.get("probe_points", []))
    if "alternative_hat" in lev:
        alt = radical_union_equal(lev["whole"], {"bar": lev["bar"], "hat": lev["alternative_hat"]}, budget)
        alt["generators"] = _texts(lev["alternative_hat"])
        alt["ci"] = _ci_dimension(lev["alternative_hat"], budget, amb)
        out["alternative_split"] = alt
    if lev.get("terminal"):
        lin = {k: _linear_subspace_dim(lev[k]) for k in ("bar", "hat")}
        out["coordinate_subspace_dims"] = lin
        ok = ok and all(v == 1 for v in lin.values())
    out["ok"] = ok
    return out


def verify_gl4_decomposition(field: Field | None = None, budget: Budget = UNLIMITED, long: bool = False,
                             jobs: int = 1) -> VerificationReport:
    """GTS_4 = V4 u A u B u C u D, the three isomorphisms, and the B-chain down to lines."""
    F = field or GF(DEFAULT_PRIME)
    P = gl4_pieces(F)
    pieces, unions = P["pieces"], P["unions"]
    run = _Run("gl4", "GTS_4 = V4 u A u B u C u D with the stated isomorphisms and B-chain",
               _inputs(field=F, budget=budget, long=long), F)
    run.artifacts["pieces"] = {k: _texts(v) for k, v in pieces.items()}
    run.artifacts["ambient"] = 16

    def inside():
        res = pieces_inside(P["gts"], pieces, budget)
        if not all(res.values()):
            raise Counterexample({"what": "piece not inside GTS_4", "detail": res})
        return res

    run.check("pieces_inside", inside)

    def cover():
        res = union_covers(P["gts"], list(pieces.values()), budget)
        if not res["covers"]:
            raise Counterexample({"what": "pieces do not cover GTS_4", "detail": res})
        return res

    run.check("cover", cover)
    run.check("union_V4uAuBuC", lambda: _must(
        radical_union_equal(unions["V4uAuBuC"], {k: pieces[k] for k in ("V4", "A", "B", "C")}, budget),
        "equal", "V4 u A u B u C"))
    run.check("union_V4uA", lambda: _must(
        radical_union_equal(unions["V4uA"], {k: pieces[k] for k in ("V4", "A")}, budget), "equal", "V4 u A"))
    homs = {
        "transpose_D": (named_hom("transpose", 4, field=F), pieces["D"], unions["V4uAuBuC"]),
        "swap12_transpose_C": (named_hom("conj_perm", 4, perm=[2, 1, 3, 4], transpose=True, field=F),
                               pieces["C"], unions["V4uA"]),
        "swap23_V4": (named_hom("conj_perm", 4, perm=[1, 3, 2, 4], field=F), pieces["V4"], pieces["A"]),
    }
    for name, (h, src, tgt) in homs.items():
        run.check(f"hom_{name}", lambda h=h, src=src, tgt=tgt: _must(hom_maps_onto(h, src, tgt, budget), "onto",
                                                                        f"{h.name} is not onto"))

    def piece_dims():
        res = {k: _ci_dimension(v, budget, 16) for k, v in pieces.items()}
        if any(r["dim"] != 6 for r in res.values()):
            raise Counterexample({"what": "piece dimension", "detail": res})
        return res

    run.check("piece_dims", piece_dims)
    chain = b_chain(F)

    def chain_check():
        levels = _pmap(_b_level, [(lev, budget) for lev in chain], jobs)
        bad = [lv["level"] for lv in levels if not lv["ok"]]
        if bad:
            raise Counterexample({"what": "B-chain", "levels": bad, "detail": levels})
        return {"levels": levels, "ambient_note": "all pieces are taken in k^16"}

    run.check("b_chain", chain_check)
    if long:
        def full():
            res = equidimensional_by_ci(P["gts"], budget=budget)
            if not res.issued or res.concluded_dim != 6:
                raise Counterexample({"what": "GTS_4 certificate", "detail": res.to_json()})
            return res.to_json()
        run.check("gts4_ci", full)
    return run.report()
