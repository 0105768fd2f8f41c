"""Standalone entrypoint: load .env, then hand the arguments to the gridhom CLI."""

import sys

from dotenv import load_dotenv

from gridhom.cli import main

load_dotenv()


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
