#!/usr/bin/env python3
"""
Kissing - Dictionary Orchestrator
Runs one graph through all three columns of the dictionary: graph theory,
the kissing reflection group of its circle packing, and the critically
fixed anti-rational map it predicts.

Sections of the report:
- classification and predictions from the graph alone
- circle packing residuals and contact certificate
- level-disk connectivity evidence
- shared matings from Hamiltonian cycles
- tischler block: predicted map portrait, checked against an explicit map when given
"""

import logging
import time
from typing import Any, Callable, Dict, List, Optional

from config import Settings, get_settings
from kissing.antirational import AntiRationalMap, predict_portrait, verify_dictionary
from kissing.errors import KissingError, TooLarge
from kissing.mating import shared_matings
from kissing.packing import CirclePacking, solve_packing, verify_contact
from kissing.plane_graph import PlaneGraph, classify, is_k_connected, is_simple, outerplanar_face
from kissing.reflection_group import level_connectivity, level_disks, predict_limit_set

logger = logging.getLogger(__name__)

EVIDENCE_LEVELS = 4
LEVEL_DISK_BUDGET = 5000


# ============================================================================
# CORE ORCHESTRATOR
# ============================================================================

class DictionaryOrchestrator:
    """
    Builds the combined dictionary report for one plane graph.

    Every section is computed independently; a domain failure in one section
    is recorded in that section and does not stop the others.
    """

    def __init__(
        self,
        graph: PlaneGraph,
        anti_rational: Optional[AntiRationalMap] = None,
        settings: Optional[Settings] = None,
        levels: int = EVIDENCE_LEVELS,
    ):
        """
        Args:
            graph: Contact graph
            anti_rational: Explicit map to check against the graph, if any
            settings: Overrides the process settings
            levels: Deepest level for connectivity evidence
        """
        self.graph = graph
        self.anti_rational = anti_rational
        self.settings = settings or get_settings()
        self.levels = levels
        self.packing: Optional[CirclePacking] = None
        self.timings: Dict[str, float] = {}

    # ========================================================================
    # PIPELINE
    # ========================================================================

    def run(self) -> Dict[str, Any]:
        logger.info(f"🚀 Dictionary report for {self.graph!r}")
        report: Dict[str, Any] = {
            "graph": {
                "n": self.graph.n,
                "edges": self.graph.edge_count,
                "faces": self.graph.face_count,
            },
        }
        report["classification"] = self._stage("classification", self._classification)
        report["predictions"] = self._stage("predictions", self._predictions)
        report["packing"] = self._stage("packing", self._packing)
        report["levels"] = self._stage("levels", self._level_evidence)
        report["shared_matings"] = self._stage("shared_matings", self._matings)
        report["tischler"] = self._stage("tischler", self._tischler)
        report["verdict"] = self._verdict(report)

        for name, seconds in self.timings.items():
            logger.debug(f"Stage {name}: {seconds:.3f}s")
        logger.info(f"{'✅' if report['verdict'] == 'PASS' else '❌'} Dictionary verdict {report['verdict']}")
        return report

    def _stage(self, name: str, build: Callable[[], Any]) -> Any:
        start = time.perf_counter()
        try:
            return build()
        except KissingError as e:
            logger.warning(f"⚠️ {name}: {e.message}")
            return {"error": e.to_dict()}
        finally:
            self.timings[name] = time.perf_counter() - start

    @staticmethod
    def _verdict(report: Dict[str, Any]) -> str:
        tischler = report.get("tischler", {})
        check = tischler.get("check") if isinstance(tischler, dict) else None
        if check is not None and check.get("verdict") == "FAIL":
            return "FAIL"
        contact = report.get("packing", {}).get("contact")
        if contact is not None and contact.get("verdict") == "FAIL":
            return "FAIL"
        return "PASS"

    # ========================================================================
    # SECTIONS
    # ========================================================================

    def _classification(self) -> Dict[str, Any]:
        return classify(self.graph, self.settings.hamiltonian_cap).to_dict()

    def _predictions(self) -> Dict[str, Any]:
        g = self.graph
        limit_set = predict_limit_set(g)
        two_connected = is_simple(g) and is_k_connected(g, 2)
        return {
            "limit_set": limit_set.to_dict(),
            "julia_gasket": limit_set.gasket,
            "anti_polynomial": two_connected and outerplanar_face(g) is not None,
            "mating": limit_set.mating_of_groups,
        }

    def _packing(self) -> Dict[str, Any]:
        self.packing = solve_packing(self.graph)
        contact = verify_contact(self.packing)
        return {"residual": self.packing.residual, "contact": contact.to_dict()}

    def _level_evidence(self) -> List[Dict[str, Any]]:
        if self.packing is None:
            return []
        n = self.packing.n
        evidence = []
        for level in range(self.levels + 1):
            count = n * (n - 1) ** level
            if count > LEVEL_DISK_BUDGET:
                logger.info(f"⚠️ Level {level} needs {count} disks; stopping evidence there")
                break
            disks = level_disks(self.packing, level)
            evidence.append({
                "level": level,
                "disks": len(disks.disks),
                "max_spherical_diameter": disks.max_spherical_diameter,
                "connected": level_connectivity(self.packing, level),
            })
        return evidence

    def _matings(self) -> Dict[str, Any]:
        try:
            matings = shared_matings(self.graph, cap=self.settings.hamiltonian_cap)
        except TooLarge as e:
            return {"count": None, "error": e.to_dict()}
        except KissingError:
            return {"count": 0, "cycles": []}
        return {"count": len(matings), "cycles": [list(m.cycle) for m in matings]}

    def _tischler(self) -> Dict[str, Any]:
        block: Dict[str, Any] = {"prediction": predict_portrait(self.graph).to_dict()}
        if self.anti_rational is not None:
            block["check"] = verify_dictionary(self.graph, self.anti_rational).to_dict()
        return block


def dictionary_report(
    graph: PlaneGraph,
    anti_rational: Optional[AntiRationalMap] = None,
    settings: Optional[Settings] = None,
) -> Dict[str, Any]:
    return DictionaryOrchestrator(graph, anti_rational, settings).run()


__all__ = ['DictionaryOrchestrator', 'dictionary_report', 'EVIDENCE_LEVELS', 'LEVEL_DISK_BUDGET']
