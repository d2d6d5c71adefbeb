#!/usr/bin/env python3
"""
Engine Runner - Orchestrates file loading, checks and solvers for each command
Every command returns a RunReport; the click front end renders it and picks the exit code
"""

import random
import sys
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from tqdm import tqdm

from src.algebra.lcsa import center_solve, check_all, check_regularity
from src.algebra.rep import ConformalMap, Representation, adjoint, dual_rep_condition_check, rep_check, rep_shift, semidirect
from src.cohomology.cochain import Cochain, cochain_validate, differential, random_cochain
from src.cohomology.deformation import cocycle2_check, deform, nijenhuis_deformation
from src.core.config import EngineConfig
from src.core.constants import ClassTag, Parity
from src.core.exceptions import InputException
from src.core.models import CheckReport, Residual, RunReport
from src.core.utils import Timer, file_digest, format_bounds
from src.derivations.audit import audit_all, gder_decompose
from src.derivations.classes import (
    class_check,
    der_commutator,
    der_hom_jacobi_check,
    derivation_extension,
    extension_check,
)
from src.derivations.solver import Bounds, SolutionBasis, solve_class
from src.fileformat.algebra_file import AlgebraDocument, format_algebra, format_basis, load_document


CENTER = "center"


def describe_map(rmap: ConformalMap) -> str:
    """Nonzero generator images, e.g. "L -> (d + 2*l) L; E -> ..." """
    images = [f"{g} -> {rmap.images[g]}" for g in rmap.domain.names if not rmap.images[g].is_zero()]
    return "; ".join(images) if images else "0"


def _nonzero_values(gamma: Cochain, prefix: Tuple[str, ...] = ()) -> List[Residual]:
    residuals = []
    for args in gamma.sorted_tuples():
        value = gamma.value(args)
        if not value.is_zero():
            residuals.append(Residual(prefix + tuple(args), str(value), element=value))
    return residuals


class EngineRunner:
    """
    Orchestrator behind the command-line front end

    Loads algebra files, dispatches to the algebra, cohomology and derivation
    packages and collects their CheckReports into one deterministic RunReport.
    """

    def __init__(self, config: Optional[EngineConfig] = None, timing: Optional[bool] = None):
        self.config = config or EngineConfig()
        self.timing = self.config.report.timing if timing is None else timing

    # ------------------------------------------------------------------
    # Plumbing
    # ------------------------------------------------------------------

    def _load(self, command: str, paths: Sequence[str]) -> Tuple[AlgebraDocument, RunReport]:
        document = load_document(paths)
        inputs = {Path(p).name if i == 0 else f"{Path(p).name}#{i}": file_digest(p) for i, p in enumerate(paths)}
        report = RunReport(command=command, inputs=inputs)
        logger.info(f"{command}: loaded {', '.join(document.sources)}")
        return document, report

    def _finish(self, report: RunReport, timer: Timer) -> RunReport:
        logger.info(f"{report.command}: {report.status.value} ({timer})")
        if self.timing:
            report.timing = str(timer)
        return report

    def _target(self, document: AlgebraDocument, spec: Optional[str]) -> Optional[Representation]:
        if spec is None:
            return None
        A = document.algebra
        if spec == "adjoint":
            return adjoint(A)
        if spec.startswith("shift:"):
            try:
                return rep_shift(A, int(spec.split(":", 1)[1]))
            except ValueError as e:
                raise InputException(f"Invalid shift target {spec!r}") from e
        if spec.startswith("rep:"):
            return document.representation(spec.split(":", 1)[1])
        raise InputException(f"Unknown target {spec!r}; expected adjoint, shift:s or rep:NAME")

    def bounds(self, deg_l: Optional[int], deg_d: Optional[int]) -> Bounds:
        solver = self.config.solver
        return (solver.deg_lambda if deg_l is None else deg_l,
                solver.deg_partial if deg_d is None else deg_d)

    # ------------------------------------------------------------------
    # Axioms
    # ------------------------------------------------------------------

    def check(self, paths: Sequence[str]) -> RunReport:
        """Grading, skew-symmetry, Hom-Jacobi, multiplicativity and regularity of α"""
        with Timer("check") as timer:
            document, report = self._load("check", paths)
            A = document.algebra
            report.add_data("generators", ", ".join(f"{n}:{A.parity(n).label()}" for n in A.names))
            for item in check_all(A):
                report.add_check(item)
            report.add_check(check_regularity(A))
        return self._finish(report, timer)

    def rep(self, paths: Sequence[str], name: Optional[str] = None) -> RunReport:
        """Representation identities, the dual criterion and the semidirect sum suite"""
        with Timer("rep") as timer:
            document, report = self._load("rep", paths)
            A = document.algebra
            rep = document.representation(name)
            report.add_data("representation", rep.name)
            report.add_check(rep_check(rep))
            dual = dual_rep_condition_check(A, rep)
            dual.informational = True
            report.add_check(dual)
            S, renames = semidirect(A, rep)
            report.add_data("semidirect generators", ", ".join(S.names))
            for item in check_all(S):
                item.name = f"semidirect {item.name}"
                report.add_check(item)
        return self._finish(report, timer)

    # ------------------------------------------------------------------
    # Cohomology
    # ------------------------------------------------------------------

    def d2(self, paths: Sequence[str], cochain: Optional[str] = None, target: Optional[str] = None,
           trials: Optional[int] = None, seed: Optional[int] = None) -> RunReport:
        """
        d(dγ) = 0 for the declared cochain and for seeded random cochains

        Random cochains alternate between arity 0 and 1 and between parities.
        Raises:
            InputException: random trials requested without a seed
        """
        trials = self.config.random.trials if trials is None else trials
        if trials > 0 and seed is None:
            raise InputException("--seed is required for randomized runs (or pass --trials 0)")
        with Timer("d2") as timer:
            document, report = self._load("d2", paths)
            A = document.algebra
            rep = self._target(document, target)

            if document.cochains:
                gamma = document.cochain(cochain)
                if rep is not None:
                    gamma = gamma.with_target(rep)
                report.add_data("cochain", f"{gamma.name} (arity {gamma.arity}, target {gamma.target.name})")
                report.add_check(cochain_validate(gamma))
                dd = differential(differential(gamma))
                report.add_check(CheckReport.from_residuals(f"d2 {gamma.name}", _nonzero_values(dd)))
            elif cochain is not None:
                raise InputException(f"Unknown cochain: {cochain}")

            if trials:
                report.add_check(self._random_trials(A, rep or adjoint(A), trials, seed))
        return self._finish(report, timer)

    def _random_trials(self, A, rep: Representation, trials: int, seed: int) -> CheckReport:
        settings = self.config.random
        rng = random.Random(seed)
        residuals, skipped = [], 0
        for i in tqdm(range(trials), desc="d2 trials", file=sys.stderr, disable=not sys.stderr.isatty()):
            gamma = random_cochain(A, rep, i % 2, Parity((i // 2) % 2), rng, settings.max_deg_lambda,
                                   settings.max_deg_partial, settings.coeff_range, name=f"random{i}")
            if not cochain_validate(gamma).passed:
                skipped += 1
                continue
            residuals.extend(_nonzero_values(differential(differential(gamma)), (f"trial {i}",)))
        report = CheckReport.from_residuals("d2 random cochains", residuals)
        report.notes.append(f"seed {seed}, {trials} trials, target {rep.name}")
        if skipped:
            report.notes.append(f"{skipped} random cochains skipped: not equivariant for this twist")
        return report

    def cocycle(self, paths: Sequence[str], cochain: Optional[str] = None) -> RunReport:
        with Timer("cocycle") as timer:
            document, report = self._load("cocycle", paths)
            psi = document.cochain(cochain)
            if psi.arity != 2:
                raise InputException(f"Cochain {psi.name} has arity {psi.arity}; a 2-cochain is required")
            report.add_check(cocycle2_check(document.algebra, psi))
        return self._finish(report, timer)

    def deform(self, paths: Sequence[str], cochain: Optional[str] = None) -> RunReport:
        with Timer("deform") as timer:
            document, report = self._load("deform", paths)
            psi = document.cochain(cochain)
            if psi.arity != 2:
                raise InputException(f"Cochain {psi.name} has arity {psi.arity}; a 2-cochain is required")
            report.add_check(cochain_validate(psi))
            family, conditions = deform(document.algebra, psi)
            self._family_data(report, family)
            for item in conditions:
                report.add_check(item)
        return self._finish(report, timer)

    def nijenhuis(self, paths: Sequence[str], map_name: Optional[str] = None) -> RunReport:
        with Timer("nijenhuis") as timer:
            document, report = self._load("nijenhuis", paths)
            spec = document.map_spec(map_name)
            report.add_data("operator", f"{spec.name}: {describe_map(spec.map)}")
            result = nijenhuis_deformation(document.algebra, spec.module_map())
            if result.family is not None:
                self._family_data(report, result.family)
            for item in result.reports():
                report.add_check(item)
        return self._finish(report, timer)

    @staticmethod
    def _family_data(report: RunReport, family) -> None:
        A = family.base
        for a, b in product(A.names, repeat=2):
            value = family.deformation.get((a, b))
            if value is not None and not value.is_zero():
                report.add_data(f"psi {a} {b}", value)

    # ------------------------------------------------------------------
    # Derivations
    # ------------------------------------------------------------------

    def solve(self, paths: Sequence[str], target: str, k: Optional[int] = None,
              bounds: Optional[Bounds] = None, out: Optional[str] = None) -> RunReport:
        """Basis of a derivation-type class or of the center within bounds"""
        k = self.config.solver.power_k if k is None else k
        bounds = tuple(bounds) if bounds is not None else self.config.solver.bounds
        with Timer("solve") as timer:
            document, report = self._load("solve", paths)
            A = document.algebra
            report.bounds = bounds
            report.add_data("class", target)
            if target == CENTER:
                center = center_solve(A, bounds)
                report.add_data("dimension", len(center))
                for i, z in enumerate(center):
                    report.add_data(f"center[{i}]", z)
                text = "".join(f"# center[{i}] = {z}\n" for i, z in enumerate(center))
                header = f"# solve center, {format_bounds(bounds)}\n"
                self._write(out, header + text, report)
            else:
                self._solve_class(report, A, ClassTag(target), k, bounds, out)
        return self._finish(report, timer)

    def _solve_class(self, report: RunReport, A, tag: ClassTag, k: int, bounds: Bounds,
                     out: Optional[str]) -> None:
        report.add_data("k", k)
        basis = solve_class(A, tag, k, bounds)
        report.add_data("dimension", len(basis))
        self._basis_data(report, basis)
        verified = CheckReport(name=f"{tag.value} re-verification", bounds=bounds)
        verified.notes.append(f"{len(basis)} basis elements pass their class check; {basis.note}")
        report.add_check(verified)
        header = f"solve {tag.value}, k = {k}, {format_bounds(bounds)}"
        self._write(out, format_basis(tag.value, basis.basis, k, tag, basis.companions, header), report)

    @staticmethod
    def _basis_data(report: RunReport, basis: SolutionBasis) -> None:
        for cand in basis.candidates():
            report.add_data(cand.name, describe_map(cand.map))
            for role, companion in zip(("D'", "D''"), cand.companions):
                report.add_data(f"{cand.name} {role}", describe_map(companion))

    @staticmethod
    def _write(out: Optional[str], text: str, report: RunReport) -> None:
        if out is None:
            return
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputException(f"Cannot write {out}: {e}") from e
        report.add_data("written", Path(out).name)
        logger.info(f"Wrote {out}")

    def verify(self, paths: Sequence[str], tag: Optional[str] = None, k: Optional[int] = None) -> RunReport:
        """Class check of every declared map that carries a class (or of all maps for an explicit tag)"""
        with Timer("verify") as timer:
            document, report = self._load("verify", paths)
            explicit = ClassTag(tag) if tag else None
            used = {c for spec in document.maps.values() for c in spec.companions}
            checked = 0
            for name in sorted(document.maps):
                spec = document.maps[name]
                if name in used or (explicit is None and spec.tag is None):
                    continue
                report.add_check(class_check(document.algebra, document.candidate(spec, explicit, k)))
                checked += 1
            if not checked:
                raise InputException("No map to verify: give --class or declare 'class = ...' in a [map]")
            report.add_data("maps checked", checked)
        return self._finish(report, timer)

    def extend(self, paths: Sequence[str], map_name: Optional[str] = None, generator: str = "D",
               out: Optional[str] = None) -> RunReport:
        """Extension by a derivation followed by its axiom suite"""
        with Timer("extend") as timer:
            document, report = self._load("extend", paths)
            A = document.algebra
            spec = document.map_spec(map_name)
            report.add_data("derivation", f"{spec.name}: {describe_map(spec.map)}")
            alpha_derivation = class_check(A, document.candidate(spec, ClassTag.DER, k=1))
            alpha_derivation.informational = True
            report.add_check(alpha_derivation)
            B, gen = derivation_extension(A, spec.map, generator)
            report.add_data("new generator", f"{gen}:{B.parity(gen).label()}")
            for item in extension_check(B, gen):
                item.name = f"extension {item.name}"
                report.add_check(item)
            self._write(out, format_algebra(B, header=f"extension by {spec.name}"), report)
        return self._finish(report, timer)

    def audit(self, paths: Sequence[str], k: Optional[int] = None, bounds: Optional[Bounds] = None) -> RunReport:
        """All class bases at one window, their inclusions, closure, decomposition and center interaction"""
        k = self.config.solver.power_k if k is None else k
        bounds = tuple(bounds) if bounds is not None else self.config.solver.bounds
        with Timer("audit") as timer:
            document, report = self._load("audit", paths)
            A = document.algebra
            report.bounds = bounds
            report.add_data("k", k)
            bases: Dict[ClassTag, SolutionBasis] = {}
            for tag in ClassTag:
                bases[tag] = solve_class(A, tag, k, bounds)
                report.add_data(f"dimension {tag.value}", len(bases[tag]))
            report.add_data("dimension center", len(center_solve(A, bounds)))
            for item in audit_all(A, bases):
                report.add_check(item)
            report.add_check(self._decomposition(A, bases[ClassTag.GDER], bounds))
        return self._finish(report, timer)

    @staticmethod
    def _decomposition(A, gder: SolutionBasis, bounds: Bounds) -> CheckReport:
        residuals = []
        for cand in gder.candidates():
            plus, minus = gder_decompose(A, cand)
            if (plus.map + minus.map) != cand.map:
                residuals.append(Residual((cand.name,), "parts do not add up", label="sum"))
            for part in (plus, minus):
                check = class_check(A, part)
                if not check.passed:
                    residuals.append(Residual((part.name,), f"fails {part.tag.value}", label="part"))
        return CheckReport.from_residuals("gder decomposition", residuals, bounds=bounds)

    def der_algebra(self, paths: Sequence[str], k: Optional[int] = None,
                    bounds: Optional[Bounds] = None) -> RunReport:
        """Commutators of Der basis elements at summed power and Hom-Jacobi of (Der, α')"""
        k = self.config.solver.power_k if k is None else k
        bounds = tuple(bounds) if bounds is not None else self.config.solver.bounds
        with Timer("der-algebra") as timer:
            document, report = self._load("der-algebra", paths)
            A = document.algebra
            report.bounds = bounds
            basis = solve_class(A, ClassTag.DER, k, bounds)
            report.add_data("dimension der", len(basis))
            candidates = basis.candidates()

            commutators = []
            for c1, c2 in product(candidates, repeat=2):
                check = class_check(A, der_commutator(c1, c2))
                if not check.passed:
                    commutators.append(Residual((c1.name, c2.name), check.residuals[0].value
                                                if check.residuals else "fails der"))
            report.add_check(CheckReport.from_residuals("der commutators", commutators, bounds=bounds,
                                                        notes=[f"commutators checked at power {2 * k}"]))

            jacobi = []
            for c1, c2, c3 in product(candidates, repeat=3):
                for residual in der_hom_jacobi_check(A, c1, c2, c3).residuals:
                    jacobi.append(Residual((c1.name, c2.name, c3.name) + residual.witness, residual.value))
            report.add_check(CheckReport.from_residuals("der hom-jacobi", jacobi, bounds=bounds))
        return self._finish(report, timer)
