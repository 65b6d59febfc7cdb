from ._serialize import (
    InvariantViolation,
    ParseError,
    deserialize,
    from_document,
    load,
    save,
    serialize,
    to_document,
)
