"""Constants for chb_simulator."""

from logging import Logger, getLogger

LOGGER: Logger = getLogger(__package__)

# Package metadata
DOMAIN = "chb_simulator"

# Field snapshot format
SNAPSHOT_MAGIC = "CHB-FIELD"
SNAPSHOT_VERSION = "v1"

# Reporting-only floor inside logarithms, never used in the dynamics
FLOOR_EPS = 1e-300

# Resolvent solve
RESOLVENT_TOL = 1e-12
RESOLVENT_MAX_ITER = 200

# Regularization defaults
DEFAULT_Q0 = 4.0
DEFAULT_PENALTY_POWER = 8.0
REGULARIZATION_EXACT = "exact"

# Cahn-Hilliard step defaults
DEFAULT_NEWTON_TOL = 1e-10
DEFAULT_NEWTON_MAX_ITER = 50
DEFAULT_LINEAR_TOL = 1e-10
NEWTON_STEP_TOL = 1e-13
ADVECTION_CFL = 0.5

# Nutrient step defaults
DEFAULT_SIGMA_FLOOR = 0.0
DEFAULT_NUTRIENT_CFL = 0.9
NEGATIVITY_ROUNDOFF = 1e-12

# Flow defaults
DEFAULT_KRYLOV_TOL = 1e-10
DEFAULT_KRYLOV_MAX_ITER = 5000
COMPATIBILITY_TOL = 1e-12

# Orchestration defaults
DEFAULT_OUTPUT_DIRECTORY = "runs"
DEFAULT_RUN_NAME = "chb_run"
MAX_DT_HALVINGS = 5
DEFAULT_SNAPSHOT_EVERY = 0
DEFAULT_CSV_EVERY = 1
DEFAULT_Q_MONITOR = 2.0
MASS_ODE_TOL = 1e-9
SUMMARY_MESSAGE_MAX_LENGTH = 500

# Source validation defaults
DEFAULT_VALIDATION_SAMPLES = 4096
DEFAULT_SIGMA_MAX = 100.0
PHI_SAMPLE_RANGE = 2.0

# Environment
ENV_THREADS = "CHB_THREADS"

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3
EXIT_NUMERIC = 4

# Configuration sections
CONF_GRID = "grid"
CONF_MODEL = "model"
CONF_SOURCES = "sources"
CONF_INITIAL_DATA = "initial_data"
CONF_TIME = "time"
CONF_FLOW = "flow"
CONF_NUMERICS = "numerics"
CONF_OUTPUT = "output"
CONF_EXPERIMENT = "experiment"

# Grid keys
CONF_NX = "nx"
CONF_NY = "ny"
CONF_LX = "lx"
CONF_LY = "ly"

# Model keys
CONF_CHI = "chi"
CONF_ELL = "ell"
CONF_LAMBDA = "lambda"
CONF_P = "p"
CONF_Q_MONITOR = "q_monitor"
CONF_EPSILON = "epsilon"
CONF_REGULARIZATION = "regularization"
CONF_Q0 = "q0"
CONF_PENALTY_POWER = "penalty_power"

# Source keys
CONF_NAME = "name"
CONF_H_BOUND = "H"
CONF_CH1 = "C_h1"
CONF_CH2 = "C_h2"
CONF_B0 = "b0"
CONF_B_INF = "b_inf"
CONF_CAPACITY = "capacity"

# Initial data keys
CONF_PHI0 = "phi0"
CONF_SIGMA0 = "sigma0"
CONF_KIND = "kind"
CONF_MEAN = "mean"
CONF_NOISE = "noise"
CONF_SEED = "seed"
CONF_RADIUS = "radius"
CONF_WIDTH = "width"
CONF_CENTER = "center"
CONF_VALUE = "value"
CONF_AMPLITUDE = "amplitude"
CONF_FLOOR = "floor"
CONF_PATH = "path"
CONF_INSIDE = "inside"
CONF_OUTSIDE = "outside"

# Initial data kinds
PHI0_CONSTANT_MEAN = "constant_mean"
PHI0_TANH_BLOB = "tanh_blob"
SIGMA0_CONSTANT = "constant"
SIGMA0_BUMP = "bump"
FROM_FILE = "from_file"

# Time keys
CONF_DT = "dt"
CONF_T_END = "t_end"

# Flow keys
CONF_ENABLED = "enabled"
CONF_KRYLOV_TOL = "krylov_tol"
CONF_KRYLOV_MAX_ITER = "krylov_max_iter"
CONF_PRESSURE_SIGN = "pressure_sign"

# Numerics keys
CONF_NEWTON_TOL = "newton_tol"
CONF_NEWTON_MAX_ITER = "newton_max_iter"
CONF_LINEAR_TOL = "linear_tol"
CONF_MOBILITY_RULE = "mobility_face_rule"
CONF_ADVECTION = "advection"
CONF_SIGMA_FLOOR = "sigma_floor"
CONF_NUTRIENT_CFL = "nutrient_cfl"

# Top-level keys
CONF_RUN_NAME = "name"

# Output keys
CONF_DIRECTORY = "directory"
CONF_SNAPSHOT_EVERY = "snapshot_every"
CONF_CSV_EVERY = "csv_every"
CONF_BINARY_FIELDS = "binary_fields"

# Experiment keys
CONF_DARCY_SWEEP = "darcy_sweep"
CONF_N_SWEEP = "n_sweep"
CONF_P_SWEEP = "p_sweep"
CONF_MMS = "mms"
CONF_EPS_LIST = "eps_list"
CONF_N_LIST = "n_list"
CONF_P_LIST = "p_list"
CONF_RESOLUTIONS = "resolutions"
CONF_DT_FACTOR = "dt_factor"
