"""Multi-class classification with orthogonal error-correcting output codes."""

from .codes import *  # noqa: F401,F403
from .codes import __all__ as _codes_all
from .datasets import *  # noqa: F401,F403
from .datasets import __all__ as _datasets_all
from .decode import *  # noqa: F401,F403
from .decode import __all__ as _decode_all
from .evaluation import *  # noqa: F401,F403
from .evaluation import __all__ as _evaluation_all
from .exceptions import *  # noqa: F401,F403
from .exceptions import __all__ as _exceptions_all
from .learners import *  # noqa: F401,F403
from .learners import __all__ as _learners_all
from .oracle import *  # noqa: F401,F403
from .oracle import __all__ as _oracle_all

__version__ = "0.1.0"

__all__ = [
    *_codes_all,
    *_decode_all,
    *_oracle_all,
    *_learners_all,
    *_datasets_all,
    *_evaluation_all,
    *_exceptions_all,
]
