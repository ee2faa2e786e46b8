"""Minimal reader for born-digital PDFs.

Covers what catalog-style documents produced by word processors and vector
tools actually use: classic and stream cross-reference tables, object
streams, Flate/ASCIIHex/ASCII85/RunLength filters, simple and Type0 fonts
with ToUnicode CMaps, and the text/path/XObject subset of the content
stream language. Scanned documents (no text layer) are out of scope by
design; nothing here performs recognition.
"""

from .document import PdfDocument  # noqa: F401
from .content import ContentInterpreter, TextGlyph  # noqa: F401
