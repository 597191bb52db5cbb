"""Exception types shared across the package."""


class EdgeListError(ValueError):
    """Problem with an edge-list input stream."""


class ParseError(EdgeListError):
    """Malformed line in an edge-list stream."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class SelfLoopError(EdgeListError):
    """Self-loop encountered while loading in strict mode."""

    def __init__(self, line_no: int, vertex: int):
        super().__init__(f"line {line_no}: self-loop at vertex {vertex}")
        self.line_no = line_no


class DuplicateEdgeError(EdgeListError):
    """Duplicate edge encountered while loading in strict mode."""

    def __init__(self, line_no: int, u: int, v: int):
        super().__init__(f"line {line_no}: duplicate edge {u} {v}")
        self.line_no = line_no


class VertexIdOverflowError(EdgeListError):
    """Vertex ID too large for 32-bit storage and remapping is off."""


class CacheFormatError(ValueError):
    """Binary CSR cache file is malformed or has the wrong magic."""


class CounterOverflowError(OverflowError):
    """A 64-bit cycle counter would wrap; results are unusable."""


class OracleCapError(ValueError):
    """Graph exceeds the size cap of a brute-force oracle."""
