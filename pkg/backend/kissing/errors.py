#!/usr/bin/env python3
"""
Kissing - Error Hierarchy
Every failure raised by the library derives from KissingError.
The CLI maps InputError to exit code 2; everything else is a domain failure.
"""

from typing import Any, Dict, Optional


class KissingError(Exception):
    """Base class for all library errors"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, "details": self.details}


# ============================================================================
# SUB-ROOTS
# ============================================================================

class InputError(KissingError):
    """Malformed or inconsistent input"""


class GraphError(KissingError):
    """Graph-theoretic precondition failed"""


class PackingError(KissingError):
    """Circle packing could not be built or certified"""


class GroupError(KissingError):
    """Reflection group / Nielsen map failure"""


class DynamicsError(KissingError):
    """Angle or anti-rational dynamics failure"""


class MatingError(KissingError):
    """Mating decision failure"""


# ============================================================================
# INPUT ERRORS
# ============================================================================

class DocumentError(InputError):
    """JSON document does not match its schema"""


class EulerViolation(InputError):
    """Rotation system is not a sphere embedding (V - E + F != 2)"""


class Disconnected(InputError):
    """Underlying graph is not connected"""


class MalformedRotation(InputError):
    """Neighbour lists are inconsistent"""


class DegreeTooSmall(InputError):
    """Degree parameter below 2"""


class NonInvariantLamination(InputError):
    """Leaf set not forward invariant under the angle map"""


class DegreeMismatch(InputError):
    """Two laminations or maps of different degree"""


class LengthMismatch(InputError):
    """Outer cycles of different length"""


class DegenerateLeaf(InputError):
    """Leaf endpoints coincide"""


# ============================================================================
# GRAPH ERRORS
# ============================================================================

class NotSimple(GraphError):
    """Graph has loops or parallel edges"""


class TooLarge(GraphError):
    """Exact search above the configured vertex cap"""


class NotOuterplanar(GraphError):
    """No face visits every vertex, or chords cross"""


class NotHamiltonianCycle(GraphError):
    """Given cycle is not a Hamiltonian cycle of the graph"""


class NotHamiltonian(GraphError):
    """Graph has no Hamiltonian cycle"""


class NotPolyhedral(GraphError):
    """Graph is not simple and 3-connected"""


# ============================================================================
# PACKING / GROUP ERRORS
# ============================================================================

class NoConvergence(PackingError):
    """Radius iteration did not reach tolerance"""


class ResidualTooLarge(PackingError):
    """Layout inconsistency above tolerance"""


class DegeneratePoints(PackingError):
    """Normalization points are not distinct"""


class DegenerateCircle(GroupError):
    """Circle with non-positive radius discriminant"""


class WordNotReduced(GroupError):
    """Word has two equal consecutive letters"""


class ExplosionGuard(GroupError):
    """Orbit enumeration exceeded the disk cap"""


class OutsideDomain(GroupError):
    """Point lies outside every closed packing disk"""


class EscapedToOmega(GroupError):
    """Iterate left the union of the packing disks"""


# ============================================================================
# DYNAMICS / MATING ERRORS
# ============================================================================

class BoundaryHit(DynamicsError):
    """Iterate landed exactly on an arc endpoint"""

    def __init__(self, step: int, index: int):
        super().__init__(f"Iterate {step} hits boundary angle {index}", {"step": step, "index": index})
        self.step = step
        self.index = index


class AdjacentVertices(DynamicsError):
    """Chord endpoints are adjacent on the outer cycle"""


class LeafNotFound(DynamicsError):
    """No 2-cycle found for a chord (internal error)"""


class LinkedLeaves(DynamicsError):
    """Two leaves cross"""


class DepthInsufficient(DynamicsError):
    """Nested arc still wider than the certification width"""


class RootFindingFailure(DynamicsError):
    """Polynomial root residual above tolerance"""


class NeutralDetected(DynamicsError):
    """Fixed point with multiplier modulus too close to 1"""


class CountMismatch(DynamicsError):
    """Fixed point count disagrees with d + 2k - 1"""


class CrossCheckMismatch(MatingError):
    """Graph gluing and lamination criteria disagree"""


__all__ = [
    'KissingError', 'InputError', 'GraphError', 'PackingError', 'GroupError',
    'DynamicsError', 'MatingError', 'DocumentError', 'EulerViolation', 'Disconnected',
    'MalformedRotation', 'DegreeTooSmall', 'NonInvariantLamination', 'DegreeMismatch',
    'LengthMismatch', 'DegenerateLeaf', 'NotSimple', 'TooLarge', 'NotOuterplanar',
    'NotHamiltonianCycle', 'NotHamiltonian', 'NotPolyhedral', 'NoConvergence',
    'ResidualTooLarge', 'DegeneratePoints', 'DegenerateCircle', 'WordNotReduced',
    'ExplosionGuard', 'OutsideDomain', 'EscapedToOmega', 'BoundaryHit', 'AdjacentVertices',
    'LeafNotFound', 'LinkedLeaves', 'DepthInsufficient', 'RootFindingFailure', 'NeutralDetected',
    'CountMismatch', 'CrossCheckMismatch',
]
