"""File and report schemas used by the command-line front end."""

from .files import SCHEMA_VERSION, ChannelFile, GeneratorFile, Matrix
from .reports import Certificate, MatrixPayload, Report, Verdict

__all__ = [
    "SCHEMA_VERSION",
    "Certificate",
    "ChannelFile",
    "GeneratorFile",
    "Matrix",
    "MatrixPayload",
    "Report",
    "Verdict",
]
