#!/usr/bin/env python3
"""
Structure Audit - Inclusions, commutator closure and center interaction of derivation classes
All checks run on solver bases computed with one shared truncation window
"""

from dataclasses import replace
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.freemod import Element
from src.algebra.lcsa import ConformalAlgebra, bracket_eval, center_solve
from src.algebra.polyring import fresh_slot
from src.core.constants import ClassTag, Symbols
from src.core.exceptions import BoundMismatchError, ClassCheckFailure, NotRegularError
from src.core.models import CheckReport, CheckStatus, Residual
from .classes import DerivationCandidate, class_check, der_commutator
from .solver import Bounds, SolutionBasis, find_companion, in_map_span


D = Symbols.DERIVATION

INCLUSIONS: Tuple[Tuple[ClassTag, ClassTag], ...] = (
    (ClassTag.ZDER, ClassTag.DER),
    (ClassTag.DER, ClassTag.QDER),
    (ClassTag.QDER, ClassTag.GDER),
    (ClassTag.C, ClassTag.QC),
    (ClassTag.QC, ClassTag.GDER),
)


# ============================================================================
# HELPERS
# ============================================================================

def _shared_window(bases: Sequence[SolutionBasis]) -> Tuple[int, Bounds]:
    """Power and bounds common to all bases"""
    first = bases[0]
    for basis in bases[1:]:
        if tuple(basis.bounds) != tuple(first.bounds):
            raise BoundMismatchError(first.bounds, basis.bounds, basis.tag.value)
        if basis.k != first.k:
            raise BoundMismatchError(f"k={first.k}", f"k={basis.k}", basis.tag.value)
    return first.k, tuple(first.bounds)


def _exceeds(cand: DerivationCandidate, bounds: Bounds) -> bool:
    rmap = cand.map
    return rmap.max_degree(rmap.slot) > bounds[0] or rmap.max_degree(D) > bounds[1]


def membership(A: ConformalAlgebra, cand: DerivationCandidate, bounds: Bounds) -> Tuple[CheckStatus, CheckReport]:
    """
    Class membership of a commutator with the companions it came with

    For GDer/QDer a failing companion guess is followed by a companion search
    within bounds; no companion found for a map outside the window is inconclusive.
    """
    report = class_check(A, cand)
    if report.passed:
        return CheckStatus.PASS, report
    if cand.tag.companions():
        found = find_companion(A, cand.map, cand.tag, cand.k, bounds)
        if found is not None:
            retry = class_check(A, replace(cand, companions=found))
            if retry.passed:
                return CheckStatus.PASS, retry
        if _exceeds(cand, bounds):
            return CheckStatus.INCONCLUSIVE, report
    return CheckStatus.FAIL, report


class _Audit:
    """Accumulates residuals and inconclusive counts for one audit report"""

    def __init__(self, name: str, bounds: Bounds):
        self.name = name
        self.bounds = bounds
        self.residuals: List[Residual] = []
        self.notes: List[str] = []
        self.inconclusive = 0

    def record(self, label: str, witness: Tuple[str, ...], status: CheckStatus, report: CheckReport) -> None:
        if status == CheckStatus.FAIL:
            value = report.residuals[0].value if report.residuals else "class identity fails"
            self.residuals.append(Residual(witness, value, label=label))
        elif status == CheckStatus.INCONCLUSIVE:
            self.inconclusive += 1
            self.notes.append(f"{label} ({', '.join(witness)}): inconclusive at bounds {self.bounds}")

    def report(self, informational: bool = False) -> CheckReport:
        status = CheckStatus.FAIL if self.residuals else (
            CheckStatus.INCONCLUSIVE if self.inconclusive else CheckStatus.PASS)
        return CheckReport(name=self.name, status=status, residuals=self.residuals,
                           notes=self.notes, bounds=self.bounds, informational=informational)


def _commutators(A: ConformalAlgebra, audit: _Audit, label: str, left: SolutionBasis, right: SolutionBasis,
                 tag: ClassTag, companions=None) -> None:
    """Commutators of all basis pairs must lie in the class `tag`"""
    for c1 in left.candidates():
        for c2 in right.candidates():
            extra = companions(c1, c2) if companions else ()
            comm = der_commutator(c1, c2, tag, extra)
            status, report = membership(A, comm, audit.bounds)
            audit.record(label, (c1.name, c2.name), status, report)


# ============================================================================
# INCLUSION AUDIT
# ============================================================================

def inclusion_audit(A: ConformalAlgebra, bases: Mapping[ClassTag, SolutionBasis]) -> CheckReport:
    """
    Inclusions between the class bases, the bracket containments between classes
    and closure of GDer, QDer and C under commutators

    Raises:
        BoundMismatchError: bases computed with different bounds or powers
    """
    k, bounds = _shared_window(list(bases.values()))
    audit = _Audit("inclusion audit", bounds)

    for small, big in INCLUSIONS:
        if small not in bases or big not in bases:
            continue
        for cand in bases[small].candidates():
            if not in_map_span(cand.map, bases[big].basis):
                audit.residuals.append(Residual((cand.name,), f"not in span of {big.value}",
                                                label=f"{small.value} in {big.value}"))

    def has(*tags: ClassTag) -> bool:
        return all(t in bases for t in tags)

    if has(ClassTag.GDER, ClassTag.QDER, ClassTag.QC):
        combined = bases[ClassTag.QDER].basis + bases[ClassTag.QC].basis
        for cand in bases[ClassTag.GDER].candidates():
            if not in_map_span(cand.map, combined):
                audit.residuals.append(Residual((cand.name,), "not in qder + qc", label="gder = qder + qc"))

    if has(ClassTag.DER, ClassTag.C):
        _commutators(A, audit, "[der, c] in c", bases[ClassTag.DER], bases[ClassTag.C], ClassTag.C)
    if has(ClassTag.QDER, ClassTag.QC):
        _commutators(A, audit, "[qder, qc] in qc", bases[ClassTag.QDER], bases[ClassTag.QC], ClassTag.QC)
    if has(ClassTag.QC):
        _commutators(A, audit, "[qc, qc] in qder", bases[ClassTag.QC], bases[ClassTag.QC], ClassTag.QDER,
                     lambda c1, c2: (der_commutator(c1, c2).map.scale(0),))
    if has(ClassTag.ZDER, ClassTag.DER):
        _commutators(A, audit, "[zder, der] in zder", bases[ClassTag.ZDER], bases[ClassTag.DER], ClassTag.ZDER)

    if has(ClassTag.GDER):
        _commutators(A, audit, "gder closure", bases[ClassTag.GDER], bases[ClassTag.GDER], ClassTag.GDER,
                     lambda c1, c2: (der_commutator(_companion(c1, 0), _companion(c2, 0)).map,
                                     der_commutator(_companion(c1, 1), _companion(c2, 1)).map))
    if has(ClassTag.QDER):
        _commutators(A, audit, "qder closure", bases[ClassTag.QDER], bases[ClassTag.QDER], ClassTag.QDER,
                     lambda c1, c2: (der_commutator(_companion(c1, 0), _companion(c2, 0)).map,))
    if has(ClassTag.C):
        _commutators(A, audit, "c closure", bases[ClassTag.C], bases[ClassTag.C], ClassTag.C)

    report = audit.report()
    report.notes.insert(0, f"k = {k}; " + ", ".join(f"{t.value}: {len(b)}" for t, b in bases.items()))
    logger.info(f"Inclusion audit: {report.status.value}")
    return report


def _companion(cand: DerivationCandidate, index: int) -> DerivationCandidate:
    return DerivationCandidate(cand.companions[index], cand.k, ClassTag.DER, name=f"{cand.name}'")


# ============================================================================
# DECOMPOSITION
# ============================================================================

def gder_decompose(A: ConformalAlgebra, cand: DerivationCandidate) -> Tuple[DerivationCandidate, DerivationCandidate]:
    """
    Split a generalized derivation into (D + D')/2 ∈ QDer with companion D''
    and (D − D')/2 ∈ QC

    Raises:
        MissingCompanionsError: fewer than two companions
        ClassCheckFailure: the GDer identity fails with the given companions
    """
    cand = replace(cand, tag=ClassTag.GDER)
    report = class_check(A, cand)
    if not report.passed:
        raise ClassCheckFailure(f"{cand.name} is not a generalized derivation with the given companions", report)
    first, second = cand.companions[0], cand.companions[1]
    half = Fraction(1, 2)
    quasi = (cand.map + first).scale(half)
    central = (cand.map - first).scale(half)
    return (DerivationCandidate(quasi, cand.k, ClassTag.QDER, (second,), name=f"{cand.name}+"),
            DerivationCandidate(central, cand.k, ClassTag.QC, name=f"{cand.name}-"))


# ============================================================================
# CENTER INTERACTION
# ============================================================================

def _centrality_residuals(A: ConformalAlgebra, value: Element) -> List[Element]:
    slot = fresh_slot(value.context, Symbols.LAMBDA)
    residuals = []
    for g in A.names:
        bracket = bracket_eval(A, value, A.generator(g, value.context), slot)
        if not bracket.is_zero():
            residuals.append(bracket)
    return residuals


def center_interaction_check(A: ConformalAlgebra, centroids: SolutionBasis, quasi: SolutionBasis,
                             bounds: Optional[Bounds] = None) -> CheckReport:
    """
    [C λ QC] takes values in the center; exactly zero when the center is trivial

    The QC × QC commutators are summarized in a note; see qc_commutator_report.

    Raises:
        NotRegularError: α is not invertible
        BoundMismatchError: bases at different bounds
    """
    if not A.is_regular():
        raise NotRegularError("The center interaction needs a surjective α")
    _, shared = _shared_window([centroids, quasi])
    if bounds is not None and tuple(bounds) != shared:
        raise BoundMismatchError(bounds, shared)
    center = center_solve(A, shared)

    residuals = []
    for c in centroids.candidates():
        for q in quasi.candidates():
            comm = der_commutator(c, q)
            for gen in A.names:
                value = comm.map.images[gen]
                if not center:
                    if not value.is_zero():
                        residuals.append(Residual((c.name, q.name, gen), str(value), label="zero", element=value))
                    continue
                for bracket in _centrality_residuals(A, value):
                    residuals.append(Residual((c.name, q.name, gen), str(bracket), label="central", element=bracket))

    report = CheckReport.from_residuals("center interaction", residuals, bounds=shared)
    report.notes.append(f"center dimension within deg-d<={shared[1]}: {len(center)}")
    qc_report = qc_commutator_report(A, quasi)
    report.notes.append(f"qc x qc commutators {'all vanish' if qc_report.passed else 'do not all vanish'}")
    return report


def qc_commutator_report(A: ConformalAlgebra, quasi: SolutionBasis) -> CheckReport:
    """Whether all QC × QC commutators vanish; informational"""
    residuals = []
    for q1 in quasi.candidates():
        for q2 in quasi.candidates():
            comm = der_commutator(q1, q2)
            if not comm.map.is_zero():
                nonzero = next(g for g in A.names if not comm.map.images[g].is_zero())
                value = comm.map.images[nonzero]
                residuals.append(Residual((q1.name, q2.name, nonzero), str(value), element=value))
    return CheckReport.from_residuals("qc commutators", residuals, bounds=tuple(quasi.bounds), informational=True)


def audit_all(A: ConformalAlgebra, bases: Mapping[ClassTag, SolutionBasis]) -> List[CheckReport]:
    """Inclusion audit plus, for regular α, the center interaction"""
    reports = [inclusion_audit(A, bases)]
    if A.is_regular() and ClassTag.C in bases and ClassTag.QC in bases:
        reports.append(center_interaction_check(A, bases[ClassTag.C], bases[ClassTag.QC]))
        reports.append(qc_commutator_report(A, bases[ClassTag.QC]))
    return reports
