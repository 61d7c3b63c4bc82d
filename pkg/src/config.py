import os


class Settings:
    """Runtime configuration read from the environment (and .env via python-dotenv)."""

    def __init__(self):
        self.reload()

    def reload(self) -> None:
        """Re-read the environment, e.g. after load_dotenv()."""
        self.jobs = _int_env("QCONG_JOBS", 1)
        # nonzero-term count at or below which schoolbook multiplication is used;
        # default picked with scripts/bench_karatsuba.py
        self.karatsuba_threshold = _int_env("QCONG_KARATSUBA_THRESHOLD", 32)
        self.series_order = _int_env("QCONG_SERIES_ORDER", 4)
        self.log_file = os.getenv("LOG_FILE", "qcong.log")
        self.log_level = os.getenv("LOG_LEVEL", "0")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value >= 1 else default


# Global instance
settings = Settings()
