from seqrecover.main import oracle, recover, table, verify

__all__ = [
    "oracle",
    "recover",
    "table",
    "verify",
]
