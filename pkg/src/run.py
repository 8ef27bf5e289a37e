import sys
from pathlib import Path

import uvicorn

# Add project root to Python path
root_dir = Path(__file__).parent.parent
sys.path.insert(0, str(root_dir))

from src.core.config import get_settings
from src.api.main import app


def main():
    """Run the FastAPI service."""
    settings = get_settings()
    print(f"rsqrt-lut API will be available at http://{settings.api_host}:{settings.api_port}")
    config = uvicorn.Config(
        app,
        host=settings.api_host,
        port=settings.api_port,
        log_level=settings.log_level.lower()
    )
    server = uvicorn.Server(config)
    try:
        server.run()
    except KeyboardInterrupt:
        print("\nServer stopped.")


if __name__ == "__main__":
    main()
