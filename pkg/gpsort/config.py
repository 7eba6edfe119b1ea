import os

from dotenv import load_dotenv

load_dotenv()

OUTPUT_DIR = os.getenv("GPSORT_OUTPUT_DIR") or "results"
DATABASE_URL = os.getenv("GPSORT_DATABASE_URL") or "sqlite:///gpsort.db"
DATABASE_CHUNK_SIZE = int(os.getenv("GPSORT_DATABASE_CHUNK_SIZE") or 1_000)
WORKERS = int(os.getenv("GPSORT_WORKERS") or os.cpu_count() or 1)
ENUMERATION_LIMIT = int(os.getenv("GPSORT_ENUMERATION_LIMIT") or 10_000_000)
