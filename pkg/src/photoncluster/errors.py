class ResourceLimitError(RuntimeError):
    """Requested system size exceeds the exact-simulation budget."""
