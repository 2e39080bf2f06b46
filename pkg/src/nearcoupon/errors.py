"""Exception hierarchy shared by every module of the package."""


class NearCouponError(Exception):
    """Base class for all errors raised by nearcoupon."""


class InputError(NearCouponError):
    """Malformed or unsupported input (CLI exit status 2)."""


class NonSymmetricAdjacency(InputError):
    pass


class NotSimple(InputError):
    pass


class NotAnEmbedding(InputError):
    """The rotation system fails the Euler check."""


class OuterFaceNotFound(InputError):
    pass


class NotADisk(NearCouponError):
    pass


class NotBoundaryEdge(NearCouponError):
    pass


class UnknownVertex(NearCouponError):
    pass


class NotOnFace(NearCouponError):
    pass


class AlreadyAdjacent(NearCouponError):
    pass


class NotNearTriangulation(InputError):
    pass


class SpecialSetInvalid(InputError):
    pass


class NotABaseCase(NearCouponError):
    pass


class PreconditionViolated(NearCouponError):
    pass


class InternalInvariantViolation(NearCouponError, AssertionError):
    """A step that the underlying proof guarantees has failed; always a bug."""


class PartialColoring(NearCouponError):
    pass


class TooLarge(NearCouponError):
    pass


class FourColoringTimeout(NearCouponError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"four-coloring search exceeded node budget ({nodes} > {budget})")
        self.nodes = nodes
        self.budget = budget


class UnknownFamily(InputError):
    pass


class BadParameter(InputError):
    pass


class GenerationFailed(NearCouponError):
    pass


class ParseError(InputError):
    pass


class NotPlanarAfterSurgery(InternalInvariantViolation):
    pass
