import logging
import sys

from dotenv import load_dotenv

load_dotenv()

from app import config
from app.exceptions import WorkbenchError
from app.routers import commands

# Configure logging
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    try:
        return commands.run(argv)
    except WorkbenchError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
