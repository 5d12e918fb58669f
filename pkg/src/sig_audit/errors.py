"""Exception types raised by the audit library."""


class AuditError(Exception):
    """Base class for all library errors."""


class ParseError(AuditError):
    """Malformed row or document in a signature/vector/pipeline file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateId(AuditError):
    """Two rows in the same file share an id."""

    def __init__(self, duplicate_id: str):
        self.duplicate_id = duplicate_id
        super().__init__(f"duplicate id: {duplicate_id}")


class RegexDialectError(AuditError):
    """A pattern uses a construct outside the supported regex dialect."""

    def __init__(self, signature_id: str | None, detail: str):
        self.signature_id = signature_id
        self.detail = detail
        prefix = f"{signature_id}: " if signature_id else ""
        super().__init__(f"{prefix}{detail}")


class UnknownSignatureRef(AuditError):
    """A vector references a signature id that does not exist."""

    def __init__(self, signature_id: str):
        self.signature_id = signature_id
        super().__init__(f"unknown signature reference: {signature_id}")


class UnknownIntent(AuditError):
    """Unrecognized intent token in a vector row."""

    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown intent token: {token!r}")


class DecodeError(AuditError):
    """Malformed percent escape hit while url-decoding in strict mode."""


class IndeterminateExpansion(AuditError):
    """Sub-rule expansion hit its caps, so sub-rule analysis is unreliable."""

    def __init__(self, signature_id: str):
        self.signature_id = signature_id
        super().__init__(
            f"{signature_id}: sub-rule expansion incomplete, raise the caps to classify"
        )


class UnknownId(AuditError):
    """An explicit id list names an id missing from the matrix or corpus."""

    def __init__(self, missing_id: str):
        self.missing_id = missing_id
        super().__init__(f"unknown id: {missing_id}")
