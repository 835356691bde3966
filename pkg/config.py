"""
Configuration settings for the Heffter designs toolkit
"""
import os

# Paths
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))
GOLDEN_FOLDER = os.environ.get("HEFFTER_DATA", os.path.join(PROJECT_ROOT, "golden"))
OUTPUT_FOLDER = os.path.join(PROJECT_ROOT, "output")

# Output files
CHECKPOINT_FILE = os.path.join(OUTPUT_FOLDER, "checkpoint.json")  # For resume functionality
CORPUS_SCAN_CACHE = os.path.join(OUTPUT_FOLDER, "corpus_scan_cache.json")
REPORT_TABLE_TXT = os.path.join(OUTPUT_FOLDER, "inequivalent_table.txt")
REPORT_TABLE_CSV = os.path.join(OUTPUT_FOLDER, "inequivalent_table.csv")

# Certificate format
CERT_MAGIC = "HEFFTER-CERT"
CERT_VERSION = 1
CERT_EXTENSION = ".cert"
CERT_KINDS = ("halfset", "system", "space", "ruler", "packing", "netseed", "basecycles")

# Exit codes
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_NOT_FOUND = 3
EXIT_INTERRUPTED = 130

# Search settings
SEARCH_SETTINGS = {
    'threads': os.cpu_count() or 1,
    'netseed_limit': 5_000_000,      # nodes visited before the backtracker gives up
    'netseed_random_trials': 2_000_000,  # randomized strategy: random prefixes tried
    'sts_node_limit': 200_000,       # super-orthogonal backtracking, per attempt
    'sts_attempts': 50,
    'sts_hill_climb_steps': 100_000,
}

# Ruler table and inequivalent-count table defaults
INEQUIVALENT_QMAX = 500
RULER_TABLE_DECIMALS = 4

# Logging
LOG_LEVEL = os.environ.get("HEFFTER_LOG_LEVEL", "INFO")
