# Is a 2 mm hole pitch fine under a fingertip-sized sphere?
# Sweep pressing depth and watch the admissible pitch open up.

from cartilab import contact

R = 3.0  # mm

print(f"sphere r = {R:g} mm")
print("depth_mm  chord_half_angle_deg  max_pitch_mm  2mm_pitch")
import math
for delta in (0.1, 0.25, 0.5, 1.0, 2.0, 3.0):
    limit = contact.max_pitch(R, delta)
    theta = math.degrees(contact.chord_half_angle(R, delta))
    check = contact.check_pitch_condition(2.0, R, delta)
    print(f"{delta:8.2f}  {theta:20.2f}  {limit:12.3f}  "
          f"{'ok' if check.ok else 'too coarse'}")

print()
dmin = contact.min_deflection_for_pitch(2.0, R)
print(f"a 2 mm pitch needs at least {dmin:.4f} mm of pressing depth")
