import logging
import os
import sys

# set default logging to stderr; stdout carries the CSV/JSON/SVG output
logging.basicConfig(
    level=os.environ.get("CROSSBOUND_LOG_LEVEL", "WARNING").upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
