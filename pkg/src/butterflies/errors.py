"""Exception hierarchy shared by every module.

Each concrete class maps to one CLI exit code (see ``cli.EXIT_CODES``).
"""


class ButterflyError(Exception):
    """Base class for all library errors."""

    code = "error"


# planar maps
class MapError(ButterflyError):
    code = "map"


class NotInvolution(MapError):
    code = "not-involution"


class NotConnected(MapError):
    code = "not-connected"


class NotSphere(MapError):
    code = "not-sphere"


class NotBivalent(MapError):
    code = "not-bivalent"


class ProtectedVertex(MapError):
    code = "protected-vertex"


class LoopAtVertex(MapError):
    code = "loop-at-vertex"


class Disconnects(MapError):
    code = "disconnects"


class CornersNotOnFace(MapError):
    code = "corners-not-on-face"


class SameSideEdge(MapError):
    code = "same-side-edge"


# codecs
class FormatError(ButterflyError):
    code = "format"


class BtfSyntaxError(FormatError):
    """Malformed text; carries 1-based ``line`` and ``column``."""

    code = "syntax"

    def __init__(self, message, line=0, column=0):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class SymbolCountError(FormatError):
    code = "symbol-count"


class NonPlanarPD(FormatError):
    code = "non-planar-pd"


class DanglingSegment(FormatError):
    code = "dangling-segment"


# butterflies
class ButterflyStructureError(ButterflyError):
    code = "structure"


class AnchorNotAntipodal(ButterflyStructureError):
    code = "anchor-not-antipodal"


class NonBivalentAE(ButterflyStructureError):
    code = "non-bivalent-ae"


class UnclassifiableVertex(ButterflyStructureError):
    code = "unclassifiable-vertex"


class GammaNotPaths(ButterflyStructureError):
    code = "gamma-not-paths"


class BadParameters(ButterflyError):
    code = "bad-parameters"


# link diagrams
class DiagramError(ButterflyError):
    code = "diagram"


class HasClosedCurve(DiagramError):
    code = "has-closed-curve"


class Disconnected(DiagramError):
    code = "disconnected"


class ComponentWithoutBridge(DiagramError):
    code = "component-without-bridge"


class TooManyCrossings(DiagramError):
    code = "too-many-crossings"


# moves
class MoveError(ButterflyError):
    code = "move"


class NotSimple(MoveError):
    code = "not-simple"


class NoAdmissibleEndpoint(MoveError):
    code = "no-admissible-endpoint"


class SelfAdjacentFace(MoveError):
    code = "self-adjacent-face"


class WouldDisconnect(MoveError):
    code = "would-disconnect"


class NotEVertex(MoveError):
    code = "not-e-vertex"


class ComponentAllSimple(MoveError):
    code = "component-all-simple"


class DegenerateLayout(ButterflyError):
    code = "degenerate-layout"


class InconsistentOrientation(FormatError):
    code = "inconsistent-orientation"
