"""Write the packaged scenarios to configs/<name>.json."""
import json
import sys
from pathlib import Path

from unifix import scenarios


def main(out="configs"):
    out = Path(out)
    out.mkdir(exist_ok=True)
    for name in scenarios.SCENARIOS:
        path = out / f"{name}.json"
        path.write_text(json.dumps(scenarios.get(name), indent=2) + "\n", encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main(*sys.argv[1:])
