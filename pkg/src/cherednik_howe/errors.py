"""Exception hierarchy shared by all modules."""


class CherednikHoweError(Exception):
    """Base class for every error raised by the package."""


class NonRationalRoots(CherednikHoweError):
    pass


class NotClosedUnderReflection(CherednikHoweError):
    pass


class RankMismatch(CherednikHoweError):
    pass


class GroupSizeCapExceeded(CherednikHoweError):
    pass


class UnsupportedGroup(CherednikHoweError):
    pass


class UnsupportedGroupNoTableFile(CherednikHoweError):
    pass


class OrthogonalityFailure(CherednikHoweError):
    pass


class UnknownLabel(CherednikHoweError):
    pass


class NotFoundBelowBound(CherednikHoweError):
    pass


class NonDivisible(CherednikHoweError):
    pass


class UnknownGenerator(CherednikHoweError):
    pass


class NotSymmetric(CherednikHoweError):
    pass


class TruncationTooSmall(CherednikHoweError):
    pass


class NotHookPartition(CherednikHoweError):
    pass


class NotLowestWeight(CherednikHoweError):
    pass


class EqualIndices(CherednikHoweError):
    pass


class ConfigParse(CherednikHoweError):
    pass


class CapExceeded(CherednikHoweError):
    pass


class InvalidRepresentation(CherednikHoweError):
    pass
