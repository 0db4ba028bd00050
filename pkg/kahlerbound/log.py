import logging

# ---- logging ----
logger = logging.getLogger("kahlerbound")
if not logger.handlers:
    h = logging.StreamHandler()
    h.setFormatter(logging.Formatter("%(asctime)s %(levelname)s kahlerbound: %(message)s"))
    logger.addHandler(h)
logger.setLevel(logging.INFO)


def set_level(level: str) -> None:
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
