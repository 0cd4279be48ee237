"""Constants for sub-event detection, tweet selection and evaluation."""

# Time frames
SECONDS_PER_MINUTE = 60
ALLOWED_PERIODS = (10, 20, 30, 60)  # Frame lengths that tile a minute exactly

# Warm-up before the scheduled start
DEFAULT_WARMUP_SECONDS = 900  # 15 minutes

# Increase detector
DEFAULT_INCREASE_FACTOR = 1.7
DEFAULT_INCREASE_PERIODS = (10, 20, 30, 60)

# Outlier detector
DEFAULT_OUTLIER_PERIOD = 60
DEFAULT_OUTLIER_QUANTILE = 0.90

# Term weighting
DEFAULT_KLD_EPSILON = 1e-6
DEFAULT_MIN_TOKEN_LEN = 2

# Languages summarized by default
DEFAULT_LANGUAGES = ("es", "en", "pt")
UNDETERMINED_LANGUAGE = "und"

# Ingestion
DEFAULT_REORDER_WINDOW_SECONDS = 5

# Evaluation
DEFAULT_MATCH_TOLERANCE = 1  # minutes
