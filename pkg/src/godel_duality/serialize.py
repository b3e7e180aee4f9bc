"""Stable string labels for nested element/point labels."""


def label_str(obj):
    """Deterministic text form: tuples as ``(a,b)``, sets as ``{a,b}``."""
    if isinstance(obj, str):
        return obj
    if isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (frozenset, set)):
        return "{" + ",".join(sorted(label_str(x) for x in obj)) + "}"
    if isinstance(obj, tuple):
        return "(" + ",".join(label_str(x) for x in obj) + ")"
    if hasattr(obj, "label"):
        return obj.label()
    return str(obj)
