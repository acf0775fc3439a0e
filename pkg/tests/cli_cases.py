"""Small but representative invocations of every subcommand."""

CASES = {
    "scale": ["scale", "--kind", "golden-12"],
    "scale-json": ["scale", "--kind", "zarlino-minor", "--format", "json"],
    "intervals": ["intervals", "--set", "all"],
    "temperament": ["temperament", "--min", "5", "--max", "60"],
    "kepler": ["kepler", "--rmin", "1", "--rmax", "3"],
    "staircase": ["staircase", "--k", "1", "--omega", "0:1:1/50", "--n-iter", "20000"],
    "tongues": ["tongues", "--k", "0.5", "0.9", "--denominators", "3", "--resolution", "1e-5", "--n-iter", "20000"],
    "tongues-grid": ["tongues", "--grid", "--k", "0.5", "1", "--omega", "0:1:1/20", "--n-iter", "20000"],
    "threefreq": ["threefreq", "--omega", "0:1:1/40", "--n-iter", "20000"],
    "ramps": ["ramps", "--w", "1:2", "--n-w", "6", "--n-omega", "8", "--n-iter", "5000"],
    "pitch": ["pitch", "--k", "6", "--f0", "100", "--dw", "-80:80:1"],
}
