import sys
from pathlib import Path

# Ensure src/ is importable when running from scripts/
PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_PATH = PROJECT_ROOT / "src"
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from regge_moments.xcheck import VerifyConfig, format_reports, run_all, write_reports


def main() -> None:
    out_dir = Path("outputs/verification")

    print("\n=== Regge moments: verification suite ===\n")

    reports = run_all(VerifyConfig())
    print(format_reports(reports))

    csv_path, json_path = write_reports(reports, out_dir)

    print("\nWrote reports:")
    print(f" - {csv_path}")
    print(f" - {json_path}")

    failed = [r.name for r in reports if not r.passed]
    if failed:
        print(f"\n{len(failed)} check(s) failed.\n")
        sys.exit(1)
    print("\nDone.\n")


if __name__ == "__main__":
    main()
