MODE_A = "A"
MODE_B = "B"

# Method tags for projector builds
CONJUGATION = "conjugation"
FOCK_SUM = "fock-sum"
ETA_QUADRATURE = "eta-quadrature"
XI_QUADRATURE = "xi-quadrature"
COHERENT_QUADRATURE = "coherent-quadrature"
PARITY = "parity"

# Quadrature defaults
DEFAULT_RADIUS = 7.0
DEFAULT_STEP = 0.05
DEFAULT_TILE_SIZE = 4096
MAX_NODES_PER_AXIS_RATIO = 2000
MAX_4D_CUTOFF = 4
MAX_4D_NODES = 100_000_000

# Cutoff limits
MIN_CUTOFF = 2
MAX_CUTOFF = 64
MAX_HERMITE_ORDER = 200

# Metrology
FINITE_DIFFERENCE_STEP = 1e-4
NORM_DEFICIT_LIMIT = 1e-8

SUITES = ("gaussians", "hermite", "states", "projectors", "metrology")
