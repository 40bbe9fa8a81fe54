"""Cross-validation of the independent decision procedures on seeded random sequents."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import formula as fm
from .boolean_algebra import FiniteBooleanAlgebra
from .cpl_reduction import cpl_entails
from .isa import degree_entails
from .logics import Logic
from .matrix6 import TABLES, entails6
from .nmatrix import GENERATED, nmatrix_entails
from .randgen import random_sequent
from .snapshots import VALUES, Value6
from .twist import twist_entails


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.total}"


def table_membership() -> SuiteResult:
    """Every matrix output lies in the corresponding multioperation output."""
    res = SuiteResult("matrix outputs inside nmatrix outputs")
    for name in ("not", "circ"):
        for z in VALUES:
            res.total += 1
            if Value6(int(TABLES[name][z])) not in GENERATED[name][z]:
                res.failures.append(f"{name}({z})")
    for name in ("and", "or", "imp"):
        for z in VALUES:
            for w in VALUES:
                res.total += 1
                if Value6(int(TABLES[name][z, w])) not in GENERATED[name][z][w]:
                    res.failures.append(f"{z} {name} {w}")
    return res


def matrix_vs_nmatrix(seed: int, trials: int) -> SuiteResult:
    """Nmatrix validity implies matrix validity (matrix valuations are legal)."""
    rng = random.Random(seed)
    res = SuiteResult("nmatrix-valid implies matrix-valid")
    for t in range(trials):
        fragment = fm.Fragment.IMPLICATION_FREE if t % 2 else fm.Fragment.FULL
        s = random_sequent(rng, max_vars=3, max_depth=3, max_premises=2, fragment=fragment)
        res.total += 1
        if nmatrix_entails(s, Logic.LETFM if t % 2 else Logic.LETK).valid and not entails6(s, fragment).valid:
            res.failures.append(str(s))
    return res


def matrix_vs_cpl(seed: int, trials: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("matrix = cpl reduction")
    for t in range(trials):
        fragment = fm.Fragment.IMPLICATION_FREE if t % 2 else fm.Fragment.FULL
        s = random_sequent(rng, max_vars=4, max_depth=5, max_premises=3, fragment=fragment)
        res.total += 1
        if entails6(s, fragment).valid != cpl_entails(s, fragment).valid:
            res.failures.append(str(s))
    return res


def matrix_vs_twist(seed: int, trials: int, atoms: int = 2) -> SuiteResult:
    """Matrix-valid sequents stay valid over the twist algebra of ``atoms`` atoms (and conversely)."""
    rng = random.Random(seed)
    B = FiniteBooleanAlgebra(atoms)
    res = SuiteResult(f"matrix = twist (atoms={atoms})")
    for _ in range(trials):
        s = random_sequent(rng, max_vars=3, max_depth=4, max_premises=3)
        res.total += 1
        if entails6(s).valid != twist_entails(B, s).valid:
            res.failures.append(str(s))
    return res


def degree_vs_matrix(seed: int, trials: int) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("degree = matrix (implication-free)")
    free = fm.Fragment.IMPLICATION_FREE
    for _ in range(trials):
        s = random_sequent(rng, max_vars=3, max_depth=4, max_premises=3, fragment=free, constants=True)
        res.total += 1
        if degree_entails(s, free).valid != entails6(s, free).valid:
            res.failures.append(str(s))
    return res


def run_selftest(seed: int = 42, trials: int = 500) -> list:
    """All suites; each derives its own stream from ``seed`` so they are independent."""
    return [
        table_membership(),
        matrix_vs_nmatrix(seed, trials),
        matrix_vs_cpl(seed + 1, trials),
        matrix_vs_twist(seed + 2, trials),
        degree_vs_matrix(seed + 3, trials),
    ]


def format_report(results: list, seed: int, trials: int) -> str:
    lines = [f"selftest seed={seed} trials={trials}"]
    for r in results:
        lines.append(r.line())
        for f in r.failures[:5]:
            lines.append(f"  mismatch: {f}")
    ok = all(r.ok for r in results)
    lines.append("all suites pass" if ok else "some suites FAILED")
    return "\n".join(lines)
