"""Constants shared across the package"""

# Search budgets and caps
DEFAULT_ISOMORPHISM_BUDGET = 10**6
DEFAULT_SEARCH_BUDGET = 10**5
DEFAULT_BALL_CAP = 10**5
DEFAULT_COMPLEMENT_CAP = 10**6

# Reserved tokens. User labels may not start with BAR_PREFIX, fresh labels are renamed on collision.
BAR_PREFIX = "~"
RESERVED_PREFIX = "_"
LOOP_LABEL = "__loop"
COLOR_PREFIX = "__c"
IDENTITY_TOKEN = "1"
ROOT_TOKEN = "r"
EMPTY_WORD = "_"

# Names of the classes a graph is checked against, in report order
CAYLEY_CLASSES = (
    "leftCancellativeMagma",
    "leftCancellativeMagmaWithIdentity",
    "leftQuasigroup",
    "leftQuasigroupWithIdentity",
    "quasigroup",
    "quasigroupWithIdentity",
    "leftCancellativeMonoidCayley",
    "cancellativeMonoidCayley",
    "cancellativeSemigroupCayley",
    "groupMonoidCayley",
    "groupCayley",
    "groupGeneralizedCayley",
)
