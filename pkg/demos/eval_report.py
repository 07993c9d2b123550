"""End-to-end evaluation run

Drives the same pipeline as the ``cubemc eval`` command from Python:
generates a short synthetic sequence, predicts every frame twice (once
translational-only, once with the advanced modes enabled), and prints
the per-frame PSNR ledger plus the CSV artifacts.
"""

import pathlib
import tempfile

from cubemc import EvalConfig, emit_csv, run_eval

cfg = EvalConfig(
    input="synthetic",
    face_size=64,
    block_size=16,
    ref_distance=1,
    synth_velocity=(0.0, 2.0, 0.0),
    synth_frames=4,
    seed=5,
)

report = run_eval(cfg)

print("frame  psnr_y(trans)  psnr_y(adv)  delta")
for fr in report.frames:
    print(f"{fr.poc:5d}  {fr.psnr_trans[0]:13.3f}  {fr.psnr_adv[0]:11.3f}  "
          f"{fr.psnr_adv[0] - fr.psnr_trans[0]:+.3f}")

print(f"\nmean Y delta     : {report.mean_delta(0):+.3f} dB")
print(f"mean U delta     : {report.mean_delta(1):+.3f} dB")
print(f"mean V delta     : {report.mean_delta(2):+.3f} dB")
print(f"advanced fraction: {report.advanced_fraction():.4f}")

out = pathlib.Path(tempfile.mkdtemp()) / "report.csv"
emit_csv(report, str(out))
lines = out.read_text().splitlines()
print(f"\n{out} ({len(lines)} lines):")
for line in lines[:4]:
    print(f"  {line}")
print("  ...")
print(f"\n{out}.summary:")
print("  " + pathlib.Path(str(out) + ".summary").read_text().replace("\n", "\n  ").rstrip())
