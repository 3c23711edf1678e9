"""Error hierarchy shared by the engine, the CLI and the service tools.

Every failure carries a stable kebab-case ``code`` (what tests and tool
clients match on) and an ``exit_code`` used by the command line.
"""


class EngineError(Exception):
    exit_code = 3
    default_code = "engine-error"

    def __init__(self, code: str | None = None, message: str = "") -> None:
        self.code = code or self.default_code
        self.message = message or self.code
        super().__init__(f"{self.code}: {self.message}")


class ConfigError(EngineError):
    exit_code = 2
    default_code = "config-error"


class DataError(EngineError):
    exit_code = 3
    default_code = "data-error"


class ModelMismatchError(EngineError):
    exit_code = 4
    default_code = "model-mismatch"


class ProgramSyntaxError(EngineError):
    default_code = "syntax-error"

    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__("syntax-error", f"{message} at offset {offset}")


class ProgramTypeError(EngineError):
    default_code = "type-error"

    def __init__(self, node: str, message: str) -> None:
        self.node = node
        super().__init__("type-error", f"{node}: {message}")


class ExecutionError(EngineError):
    default_code = "execution-error"


class GenerationError(EngineError):
    default_code = "generation-error"


class TokenizationError(EngineError):
    default_code = "oov-token"


class ShapeError(EngineError):
    default_code = "shape-mismatch"

    def __init__(self, op: str, *shapes: tuple[int, ...]) -> None:
        self.op = op
        self.shapes = shapes
        rendered = ", ".join(str(s) for s in shapes)
        super().__init__("shape-mismatch", f"{op} got incompatible shapes {rendered}")


class UnparseableTextError(EngineError):
    default_code = "unparseable-question"
