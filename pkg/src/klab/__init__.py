"""klab: Kottwitz sets, Hodge-Newton decomposability and filtered-object checks."""
from __future__ import annotations

__version__ = "0.1.0"
