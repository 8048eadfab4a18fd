"""Regular-sequence certificates and the transfer principles around them.

A sequence g_1..g_t is certified regular step by step: at step i we check
that g_i is a nonzerodivisor modulo I_{i-1} = (g_1..g_{i-1}), i.e.
(I_{i-1} : g_i) = I_{i-1}, and that I_{i-1} + (g_i) is a proper ideal.

For homogeneous prefixes the colon test is done with Hilbert series: with
d = deg g_i, the exact sequence

    0 -> ((I:g)/I)(-d) -> (R/I)(-d) --g--> R/I -> R/(I + g) -> 0

gives HS(R/(I+g)) = (1 - t^d) HS(R/I) exactly when (I : g) = I.  Both
series come from leading monomials of bases we need anyway for the unit
test, so no elimination is required.  Inhomogeneous prefixes use the
explicit colon ideal.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import BudgetExceeded, GtkitError, NotHomogeneousError
from .groebner import UNLIMITED, Budget, GroebnerBasis, Ideal, _compute, ideal_quotient, membership
from .monomial import hilbert_numerator, series_times_one_minus_tpow
from .poly import DEGREVLEX, Polynomial, Ring


class ImplementationError(GtkitError):
    """A check that cannot fail for a correct implementation did fail."""


@dataclass
class StepRecord:
    index: int
    quotient_equal: bool
    non_unit: bool
    method: str
    seconds: float

    def to_json(self):
        return {"index": self.index, "quotient_equal": self.quotient_equal, "non_unit": self.non_unit,
                "method": self.method, "seconds": round(self.seconds, 6)}


@dataclass
class RegularityCertificate:
    sequence: List[Polynomial]
    steps: List[StepRecord]
    verdict: str  # "regular" | "failed" | "budget"
    failed_at: Optional[int] = None
    budget_at: Optional[int] = None
    label: str = "exact"
    note: str = ""
    final_basis: Optional[GroebnerBasis] = field(default=None, repr=False)

    @property
    def regular(self) -> bool:
        return self.verdict == "regular"

    def to_json(self):
        out = {
            "sequence": [str(g) for g in self.sequence],
            "steps": [s.to_json() for s in self.steps],
            "verdict": self.verdict,
            "label": self.label,
        }
        if self.failed_at is not None:
            out["failed_at"] = self.failed_at
        if self.budget_at is not None:
            out["budget_at"] = self.budget_at
        if self.note:
            out["note"] = self.note
        return out


def _label(ring: Ring) -> str:
    return "modular evidence" if ring.field.characteristic else "exact"


def _all_homogeneous(gs) -> bool:
    return all(g.is_homogeneous()[0] for g in gs)


def is_regular_sequence(gs: Sequence[Polynomial], budget: Budget = UNLIMITED, method: str = "auto",
                        ring: Ring | None = None) -> RegularityCertificate:
    """Certify g_1..g_t regular, one step per element, in the given order.

    ``method``: "auto" (Hilbert series for homogeneous prefixes, colon ideal
    otherwise), "hilbert" or "quotient".
    """
    gs = list(gs)
    if ring is None:
        if not gs:
            raise ValueError("ring required for an empty sequence")
        ring = gs[0].ring
    homogeneous = _all_homogeneous(gs)
    if method == "hilbert" and not homogeneous:
        raise NotHomogeneousError("Hilbert-series test needs homogeneous input")
    use_hilbert = method == "hilbert" or (method == "auto" and homogeneous)
    steps: List[StepRecord] = []
    prev: Optional[GroebnerBasis] = None
    prev_num = {0: 1}
    for i, g in enumerate(gs, start=1):
        t0 = time.monotonic()
        try:
            if prev is None:
                gb = _compute(ring, [g], DEGREVLEX, budget)
            else:
                gb = _compute(ring, [g], DEGREVLEX, budget, start=prev.polys)
            non_unit = not gb.is_unit
            if not g:
                qeq = False
                how = "zero"
            elif use_hilbert:
                num = hilbert_numerator(gb.leads)
                deg = g.is_homogeneous()[1]
                qeq = num == series_times_one_minus_tpow(prev_num, deg)
                prev_num = num
                how = "hilbert"
            elif prev is None:
                qeq = True  # (0 : g) = 0 in a domain
                how = "domain"
            else:
                I_prev = Ideal(gs[:i - 1], ring)
                I_prev.seed(prev)
                Q = ideal_quotient(I_prev, g, budget=budget)
                qeq = all(membership(q, I_prev, budget) for q in Q.generators)
                how = "quotient"
        except BudgetExceeded as exc:
            return RegularityCertificate(gs, steps, "budget", budget_at=i, label=_label(ring), note=str(exc))
        steps.append(StepRecord(i, qeq, non_unit, how, time.monotonic() - t0))
        if not (qeq and non_unit):
            return RegularityCertificate(gs, steps, "failed", failed_at=i, label=_label(ring), final_basis=gb)
        prev = gb
    return RegularityCertificate(gs, steps, "regular", label=_label(ring), final_basis=prev)


@dataclass
class EquidimCertificate:
    ambient_dim: int
    length: int
    homogeneous: bool
    regularity: RegularityCertificate
    concluded_dim: Optional[int]
    issued: bool
    refusal: str = ""

    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "length": self.length,
            "homogeneous": self.homogeneous,
            "regularity": self.regularity.to_json(),
            "concluded_dim": self.concluded_dim,
            "issued": self.issued,
            "refusal": self.refusal,
            "criterion": "homogeneous regular sequence => complete intersection => equidimensional of dim n - t",
        }


def equidimensional_by_ci(gs: Sequence[Polynomial], ambient: int | None = None,
                          budget: Budget = UNLIMITED) -> EquidimCertificate:
    gs = list(gs)
    ring = gs[0].ring
    n = ring.nvars if ambient is None else ambient
    for k, g in enumerate(gs, start=1):
        hom, deg = g.is_homogeneous()
        if not hom:
            raise NotHomogeneousError(f"generator {k} is not homogeneous")
        if not g or deg < 1:
            raise NotHomogeneousError(f"generator {k} must have positive degree")
    cert = is_regular_sequence(gs, budget=budget)
    if cert.verdict == "regular":
        return EquidimCertificate(n, len(gs), True, cert, n - len(gs), True)
    if cert.verdict == "budget":
        return EquidimCertificate(n, len(gs), True, cert, None, False, f"budget exceeded at step {cert.budget_at}")
    return EquidimCertificate(n, len(gs), True, cert, None, False, f"not regular: fails at index {cert.failed_at}")


def check_permutation_invariance(gs: Sequence[Polynomial], trials: int = 20, seed: int = 0,
                                 budget: Budget = UNLIMITED) -> dict:
    """Re-certify permutations of a certified homogeneous regular sequence.

    Exhaustive when t! <= trials, otherwise ``trials`` seeded samples.  A
    non-regular permutation raises ImplementationError.
    """
    gs = list(gs)
    if not _all_homogeneous(gs):
        raise NotHomogeneousError("permutation invariance needs homogeneous input")
    t = len(gs)
    nperm = 1
    for k in range(2, t + 1):
        nperm *= k
    if nperm <= trials:
        perms = [list(p) for p in itertools.permutations(range(t))]
        exhaustive = True
    else:
        rng = random.Random(seed)
        perms = []
        for _ in range(trials):
            p = list(range(t))
            rng.shuffle(p)
            perms.append(p)
        exhaustive = False
    results = []
    budget_hits = 0
    for p in perms:
        cert = is_regular_sequence([gs[k] for k in p], budget=budget)
        if cert.verdict == "failed":
            raise ImplementationError(f"permutation {p} of a regular sequence failed at {cert.failed_at}")
        if cert.verdict == "budget":
            budget_hits += 1
        results.append({"permutation": p, "verdict": cert.verdict})
    return {"tested": len(perms), "exhaustive": exhaustive, "seed": seed, "budget_hits": budget_hits,
            "all_regular": budget_hits == 0, "results": results}


def check_subsequence(gs: Sequence[Polynomial], subset: Sequence[int], budget: Budget = UNLIMITED,
                      ring: Ring | None = None) -> RegularityCertificate:
    """Certificate for the order-preserving subsequence picked by ``subset`` (0-based indices)."""
    subset = list(subset)
    if subset != sorted(subset) or len(set(subset)) != len(subset):
        raise ValueError("subset must be strictly increasing")
    gs = list(gs)
    ring = ring or gs[0].ring
    if not subset:
        return RegularityCertificate([], [], "regular", label=_label(ring), note="empty sequence")
    return is_regular_sequence([gs[k] for k in subset], budget=budget, ring=ring)


def project_out_variables(Gs: Sequence[Polynomial], leading_vars: Sequence[str]) -> List[Polynomial]:
    """G_i(0, .., 0, X_{r+1}, .., X_n) in the ring without ``leading_vars``."""
    Gs = list(Gs)
    if not Gs:
        return []
    ring = Gs[0].ring
    drop = set(leading_vars)
    small = Ring([v for v in ring.variables if v not in drop], ring.field)
    return [g.substitute_zero(leading_vars).change_ring(small) for g in Gs]


@dataclass
class LeadingFormCertificate:
    sequence: List[Polynomial]
    leading_forms: List[Polynomial]
    forms_certificate: Optional[RegularityCertificate]
    verdict: str  # "regular" | "inconclusive"
    direct: Optional[RegularityCertificate] = None
    note: str = ""

    def to_json(self):
        return {
            "sequence": [str(g) for g in self.sequence],
            "leading_forms": [str(g) for g in self.leading_forms],
            "forms_certificate": self.forms_certificate.to_json() if self.forms_certificate else None,
            "verdict": self.verdict,
            "direct": self.direct.to_json() if self.direct else None,
            "note": self.note,
        }


def leading_form_inference(gs: Sequence[Polynomial], budget: Budget = UNLIMITED, cross_check: bool | None = None,
                           cross_check_max_vars: int = 6) -> LeadingFormCertificate:
    """Regularity of gs from regularity of its top-degree forms.

    Only ever concludes positively; if the forms are not regular the answer
    is "inconclusive".  The optional direct check runs the quotient chain
    on gs itself (small rings only by default).
    """
    gs = list(gs)
    ring = gs[0].ring
    if any(not g for g in gs):
        return LeadingFormCertificate(gs, [], None, "inconclusive", note="zero polynomial in sequence")
    forms = [g.leading_form() for g in gs]
    fc = is_regular_sequence(forms, budget=budget)
    if cross_check is None:
        cross_check = ring.nvars <= cross_check_max_vars
    direct = None
    note = ""
    if cross_check:
        direct = is_regular_sequence(gs, budget=budget, method="auto")
        if direct.verdict == "failed" and direct.steps and not direct.steps[-1].non_unit:
            note = "unit ideal"
    if fc.verdict == "regular":
        if direct is not None and direct.verdict == "failed":
            raise ImplementationError("leading forms regular but the sequence itself is not")
        return LeadingFormCertificate(gs, forms, fc, "regular", direct, note)
    if fc.verdict == "budget":
        note = note or "budget exceeded on leading forms"
    return LeadingFormCertificate(gs, forms, fc, "inconclusive", direct, note)
