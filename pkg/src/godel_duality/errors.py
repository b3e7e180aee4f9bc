"""Exception hierarchy. Each class carries a short machine-readable code."""


class GodelError(Exception):
    code = "error"

    def __init__(self, detail, witness=None):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness

    def to_json(self):
        out = {"error": self.code, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class InputError(GodelError):
    code = "input"


class StructuralError(GodelError):
    """A relation that should be an order (or a forest) is not one."""
    code = "structural"


class NotGodelError(GodelError):
    code = "not-godel"


class VarietyError(GodelError):
    """An algebra or forest lies outside the requested G_n."""
    code = "variety"


class ResourceError(GodelError):
    code = "resource"


class InternalInconsistency(GodelError):
    code = "internal"
