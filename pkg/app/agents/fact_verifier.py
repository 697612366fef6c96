from typing import Any, Callable, Dict, Optional
import json
import logging

from app.exceptions import FactMismatchError, WorkbenchError
from app.models import Fact, FactLedger
from app.services.algebra import Algebra, socle_left_regular
from app.services.approximation import mho_quiver
from app.services.classification import torsionless_census
from app.services.corpus import corpus_algebra
from app.services.duality import is_reflexive, is_torsionless, phi
from app.services.parser import resolve_module
from app.services.representation import (
    ext1,
    is_iso,
    is_projective,
    is_simple,
    projective,
    regular_rep,
    simple,
)
from app.services.self_injectivity import (
    contrapositive_scan,
    is_kasch,
    is_qf2,
    is_qf3,
    self_injectivity_report,
    simple_dual_report,
)

# Configure logging
logger = logging.getLogger(__name__)

Tool = Callable[[Algebra, Any], Any]


def _dual_report(a: Algebra):
    if "simple_dual_report" not in a._cache:
        a._cache["simple_dual_report"] = simple_dual_report(a)
    return a._cache["simple_dual_report"]


# Tools: each returns the actual value in the shape of the expected one

def dim_tool(a: Algebra, expected: Any) -> Any:
    return a.dim


def socle_basis_tool(a: Algebra, expected: Any) -> Any:
    return sorted(a.format_element(v) for v in socle_left_regular(a))


def regular_dims_tool(a: Algebra, expected: Any) -> Any:
    return list(regular_rep(a).dims)


def projective_dims_tool(a: Algebra, expected: Any) -> Any:
    return {v: projective(a, v).dim for v in a.vertices}


def dual_dims_tool(a: Algebra, expected: Any) -> Any:
    return [e.dual_dim for e in _dual_report(a).simples]


def torsionless_simples_tool(a: Algebra, expected: Any) -> Any:
    return [e.torsionless for e in _dual_report(a).simples]


def reflexive_simples_tool(a: Algebra, expected: Any) -> Any:
    return [e.reflexive for e in _dual_report(a).simples]


def orthogonal_brick_duals_tool(a: Algebra, expected: Any) -> Any:
    return _dual_report(a).orthogonal_brick_duals


def self_injective_tool(a: Algebra, expected: Any) -> Any:
    return self_injectivity_report(a).verdict


def census_tool(a: Algebra, expected: Any) -> Any:
    return torsionless_census(a).count


def mho_quiver_tool(a: Algebra, expected: Any) -> Any:
    quiver = mho_quiver([simple(a, v) for v in a.vertices])
    return {"nodes": len(quiver.nodes), "edges": len(quiver.edges), "componentSizes": quiver.component_sizes()}


_MODULE_PROPERTIES: Dict[str, Callable] = {
    "dims": lambda m: list(m.dims),
    "dim": lambda m: m.dim,
    "torsionless": is_torsionless,
    "reflexive": is_reflexive,
    "projective": is_projective,
    "simple": is_simple,
}


def module_tool(a: Algebra, expected: Any, descriptor: str = "") -> Any:
    m = resolve_module(descriptor, a)
    return {k: _MODULE_PROPERTIES[k](m) for k in expected}


def iso_tool(a: Algebra, expected: Any) -> Any:
    left, right = resolve_module(expected["left"], a), resolve_module(expected["right"], a)
    return {**expected, "expected": is_iso(left, right)}


def ext1_nonzero_tool(a: Algebra, expected: Any) -> Any:
    m, n = resolve_module(expected["module"], a), resolve_module(expected["target"], a)
    return {**expected, "expected": ext1(m, n) > 0}


def phi_cokernel_dims_tool(a: Algebra, expected: Any) -> Any:
    return {"vertex": expected["vertex"], "dims": list(phi(simple(a, expected["vertex"])).cokernel.dims)}


def scan_tool(a: Algebra, expected: Any, cls: str = "") -> Any:
    verdict = contrapositive_scan(a, cls)
    actual = {"vacuous": verdict.vacuous}
    if not verdict.vacuous:
        actual.update(witness=verdict.witness, kind=verdict.kind)
    return actual


TOOLS: Dict[str, Tool] = {
    "dim": dim_tool,
    "socleBasis": socle_basis_tool,
    "regularDims": regular_dims_tool,
    "projectiveDims": projective_dims_tool,
    "dualDims": dual_dims_tool,
    "torsionlessSimples": torsionless_simples_tool,
    "reflexiveSimples": reflexive_simples_tool,
    "orthogonalBrickDuals": orthogonal_brick_duals_tool,
    "selfInjective": self_injective_tool,
    "kasch": lambda a, _: is_kasch(a).value,
    "qf2": lambda a, _: is_qf2(a).value,
    "qf3": lambda a, _: is_qf3(a).value,
    "local": lambda a, _: a.is_local(),
    "radSquareZero": lambda a, _: a.radical_square_is_zero(),
    "census": census_tool,
    "mhoQuiver": mho_quiver_tool,
    "module": module_tool,
    "iso": iso_tool,
    "ext1Nonzero": ext1_nonzero_tool,
    "phiCokernelDims": phi_cokernel_dims_tool,
    "scan": scan_tool,
}


def _normalize(key: str, value: Any) -> Any:
    return sorted(value) if key == "socleBasis" else value


def check_fact(a: Algebra, fact: Fact) -> Dict[str, Any]:
    """Run the tool for one fact; never raises for a failed computation."""
    kind, _, qualifier = fact.key.partition(":")
    result: Dict[str, Any] = {
        "algebra": a.name,
        "key": fact.key,
        "provenance": fact.provenance,
        "expected": fact.value,
    }
    tool = TOOLS.get(kind)
    if tool is None:
        result.update(success=False, error=f"no tool for fact kind {kind!r}")
        logger.error(f"FACT_TOOL ERROR: {json.dumps(result, indent=2)}")
        return result
    try:
        if kind == "module":
            actual = module_tool(a, fact.value, descriptor=qualifier)
        elif kind == "scan":
            actual = scan_tool(a, fact.value, cls=qualifier)
        else:
            actual = tool(a, fact.value)
    except WorkbenchError as e:
        result.update(success=False, error=f"{type(e).__name__}: {e}")
        logger.error(f"FACT_TOOL ERROR: {json.dumps(result, indent=2)}")
        return result
    result.update(actual=actual, success=_normalize(kind, actual) == _normalize(kind, fact.value))
    if result["success"]:
        logger.info(f"FACT_TOOL OUTPUT: {json.dumps(result, indent=2)}")
    else:
        logger.error(f"FACT_TOOL MISMATCH: {json.dumps(result, indent=2)}")
    return result


class FactVerifierAgent:
    """Replays a fact ledger against freshly built corpus algebras."""

    def __init__(self, include_slow: bool = True, algebras: Optional[list[str]] = None):
        self.include_slow = include_slow
        self.algebras = algebras

    def run(self, ledger: FactLedger) -> list[Dict[str, Any]]:
        results = []
        for entry in ledger.algebras:
            if self.algebras and entry.algebra not in self.algebras:
                continue
            logger.info(f"FACT_VERIFIER INPUT: algebra={entry.algebra}, facts={len(entry.facts)}")
            a = corpus_algebra(entry.algebra)
            for fact in entry.facts:
                if fact.slow and not self.include_slow:
                    logger.info(f"Skipping slow fact {entry.algebra}/{fact.key}")
                    continue
                results.append(check_fact(a, fact))
        return results

    def verify(self, ledger: FactLedger) -> list[Dict[str, Any]]:
        """Like `run`, but raises FactMismatchError when any fact fails."""
        results = self.run(ledger)
        failed = [r for r in results if not r["success"]]
        if failed:
            keys = ", ".join(f"{r['algebra']}/{r['key']}" for r in failed)
            raise FactMismatchError(f"{len(failed)} of {len(results)} facts failed: {keys}")
        logger.info(f"All {len(results)} facts match")
        return results
