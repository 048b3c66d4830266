"""Compare the package version with the current git tag (release CI step)."""

import re
import subprocess
import sys
from pathlib import Path

VERSION_FILE = Path(__file__).parent / "entgeom" / "version.py"


def read_version(path: Path = VERSION_FILE) -> str:
    metadata = dict(re.findall(r'__([a-z]+)__\s*=\s*"([^"]+)"', path.read_text(encoding="utf-8")))
    return metadata["version"]


def matches_tag(version: str, tag: str) -> bool:
    """Tags are written either 1.2.3 or v1.2.3"""
    return tag.strip() in (version, f"v{version}")


def main() -> int:
    version = read_version()
    with subprocess.Popen(["git", "describe", "--tags"], stdout=subprocess.PIPE) as process:
        tag = process.communicate()[0].strip().decode(encoding="utf-8")
    if matches_tag(version, tag):
        print(f"Tag and version are the same ({version}) !")
        return 0
    print(f"Tag {tag} and version {version} are not the same !")
    return 1


if __name__ == "__main__":
    sys.exit(main())
