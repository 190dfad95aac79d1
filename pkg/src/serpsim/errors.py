"""Exception hierarchy shared by all serpsim modules."""


class SerpsimError(Exception):
    """Base class for all data and domain errors raised by serpsim."""


class ParseError(SerpsimError):
    """Input bytes are not a well-formed record file."""


class SchemaError(SerpsimError):
    """A parsed record violates the snapshot schema (missing field,
    duplicate rank, empty url, bad value)."""


class DuplicateKeyError(SerpsimError):
    """A (query_id, url) judgment key appears more than once."""


class MissingDocument(SerpsimError):
    """A content-based measure needs a document body that was never loaded."""

    def __init__(self, query_id: str, url: str):
        super().__init__(f"no document body for query {query_id!r}, url {url!r}")
        self.query_id = query_id
        self.url = url


class EmptyHistogram(SerpsimError):
    """A distribution measure received a histogram with zero total mass."""


class DuplicateElement(SerpsimError):
    """A ranked list passed to a rank measure repeats an element."""


class NotPermutation(SerpsimError):
    """The input sequence is not a permutation of 1..N."""


class EmptyMarket(SerpsimError):
    """The query log has no records for the requested market."""


class InvalidSpec(SerpsimError):
    """A perturbation spec violates its own bounds."""


class InvalidProfile(SerpsimError):
    """A synthetic-corpus profile is malformed or inconsistent."""


class NoPairs(SerpsimError):
    """A corpus directory yielded no comparable snapshot pairs."""


class NoJudgedQueries(SerpsimError):
    """The judgment file covers none of the queries in the snapshot set."""


class UsageError(SerpsimError):
    """Bad command-line usage (maps to exit code 1, not 2)."""
