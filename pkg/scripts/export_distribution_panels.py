import sys
from pathlib import Path

# Ensure src/ is importable when running from scripts/
PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_PATH = PROJECT_ROOT / "src"
if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

from regge_moments.cli import CliConfig, distribution_frame
from regge_moments.closed_form import local_maxima

# Small gamma: spacelike peaks near vsq = -4 gamma^2 n^2. Large gamma: timelike peaks near vsq = 4 n^2.
PANELS = {
    "small_gamma": CliConfig(gamma=0.05, vsq_min=-0.09, vsq_max=0.01, samples=401),
    "large_gamma": CliConfig(gamma=10.0, vsq_min=0.0, vsq_max=44.0, samples=441),
}


def main() -> None:
    out_dir = Path("outputs/distribution")
    out_dir.mkdir(parents=True, exist_ok=True)

    print("\n=== Area distribution panels ===\n")

    for label, config in PANELS.items():
        df = distribution_frame(config)
        path = out_dir / f"{label}.csv"
        df.to_csv(path, index=False, float_format="%.17g")

        peaks = local_maxima(config.gamma, config.vsq_min, config.vsq_max)
        print(f"[{label}] gamma={config.gamma:g}: {len(df)} rows -> {path}")
        print(f"     local maxima at vsq = {', '.join(f'{v:.6g}' for v in peaks) or 'none'}")

    print("\nDone.\n")


if __name__ == "__main__":
    main()
