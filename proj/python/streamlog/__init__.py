"""Streaming chase engine for existential rules.

Thin wrapper over the _streamlog extension module; see the project README
for the rule, fact and query syntax.
"""

try:  # installed wheel keeps the extension inside the package
    from ._streamlog import (  # noqa: F401
        Program,
        answer,
        chase,
        classify,
        classify_report,
        parse_program,
        stream_trace,
    )
except ImportError:  # development builds leave it in the cmake build dir
    from _streamlog import (  # noqa: F401
        Program,
        answer,
        chase,
        classify,
        classify_report,
        parse_program,
        stream_trace,
    )

__all__ = [
    "Program",
    "answer",
    "chase",
    "classify",
    "classify_report",
    "parse_program",
    "stream_trace",
]
