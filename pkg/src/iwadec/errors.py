"""Exception hierarchy shared by all iwadec modules.

Two families matter to the CLI: InputError subclasses map to exit code 1
(the user handed us something malformed), VerificationError subclasses map
to exit code 2 (the inputs parsed but an exact check failed). Everything
else is a plain bug and propagates as-is.
"""


class IwadecError(Exception):
    """Base class for all errors raised by this package."""


class InputError(IwadecError):
    """Malformed or out-of-contract user input."""


class VerificationError(IwadecError):
    """An exact identity or consistency check failed."""


# group loading / gamma action

class NonAssociative(InputError):
    """Multiplication table fails associativity."""


class NoIdentity(InputError):
    """Multiplication table has no two-sided identity."""


class NoInverse(InputError):
    """Some element has no inverse in the table."""


class MalformedInput(InputError):
    """Serialized input does not match the documented JSON shapes."""


class NotAutomorphism(InputError):
    """Claimed automorphism is not a bijective homomorphism."""


class OrderNotPPower(InputError):
    """The automorphism order is not a power of the chosen odd prime p."""


# character table

class InternalPrimeSearchFailed(IwadecError):
    """No suitable modular prime below the configured bound."""


class NotAUnit(InputError):
    """A residue that must be invertible (mod m, or in O_K) is not."""


# local fields

class NotASubfield(InputError):
    """Field specs passed to extension_profile are not nested."""


class NoRootInResidue(VerificationError):
    """Root-of-unity part of the element is not an s-th power."""


class PrecisionLoss(IwadecError):
    """A p-adic computation ran out of trusted digits; raise the precision."""


# clifford / components

class InconsistentOrbit(IwadecError):
    """Internal invariant w = v * (F(eta):F_chi) failed; signals a bug."""


class FieldOutOfRange(InputError):
    """Base-change field E does not satisfy F_chi <= E <= F(eta)."""


# division algebras

class SpecMismatch(InputError):
    """Two cyclic-algebra elements belong to different specs."""


class IndexNotDividing(InputError):
    """The index s does not divide q_tau - 1, so tau cannot extend."""


class BackendUnavailable(IwadecError):
    """No Schur-index backend can handle this component at desk scale."""


class SchurBackendUnavailable(BackendUnavailable):
    """Alias used by the decomposition layer when flagging partial records."""


# skew power series

class TwistMismatch(InputError):
    """Two skew series have different twists or truncation degrees."""


class DegreesNotCoprime(InputError):
    """combine_generators needs coprime subextension degrees."""
