import numpy as np

# Sentinel for "never reached"; strictly above any valid step.
UNREACHABLE = np.iinfo(np.int64).max
