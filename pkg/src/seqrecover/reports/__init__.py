from seqrecover.reports.report import summary

__all__ = [
    "summary",
]
