class WolffpotException(Exception):
    """Define a base class for wolffpot Exceptions, and subclass all specific exceptions from this"""
    pass


class ParameterException(WolffpotException, ValueError):
    """Raise when an exponent/dimension tuple or a configuration value violates its invariants"""
    pass


class MeasureException(WolffpotException, ValueError):
    """Raise when a measure is malformed: negative weights, zero total mass, bad geometry"""
    pass


class NodeMismatch(WolffpotException, ValueError):
    """Raise when node values do not line up with the quadrature nodes they are integrated against"""
    pass


class DomainException(WolffpotException, ValueError):
    """Raise when a kernel is evaluated at a point outside of its domain"""
    pass


class StructureException(WolffpotException):
    """Raise when a report frame does not carry its required columns or metadata"""
    pass


class SolverException(WolffpotException):
    """Generic exception for expected bad things happening inside the fixed-point solver"""
    pass


class InfiniteSeed(SolverException):
    """Raise when the iteration cannot start because a node potential is infinite"""
    pass


class NotConverged(SolverException):
    """Raise when the iteration exhausts max_iter, the partial report is attached as `report`"""

    def __init__(self, message, report=None):
        super(NotConverged, self).__init__(message)
        self.report = report


class LoaderException(WolffpotException):
    """Generic exception for expected bad things happening inside loader functions"""
    pass


class LoaderNotFound(LoaderException):
    """Raise when no loader was found"""
    pass


class IncorrectFileType(LoaderException):
    """Raise this exception when a file is determined to be an incorrect type for the loader function"""
    pass


class ConfigException(LoaderException):
    """Raise when an experiment configuration cannot be used: missing files, bad schema, bad values"""
    pass
