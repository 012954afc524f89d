"""Print the key values of both protocols next to their closed forms."""
from daemonic import closed_form as cf
from daemonic.experiments import evaluate_point

print("memoryless local damping")
print(f"{'gamma':>6} {'W':>8} {'W_d':>8} {'gain':>8} {'gain (closed)':>14}")
for g in (0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0):
    r = evaluate_point(g, float("nan"), 1.0, 181)
    print(f"{g:6.2f} {r.ergotropy:8.4f} {r.daemonic_ergotropy:8.4f} {r.daemonic_gain:8.4f} {cf.optimal_memoryless_gain(g):14.4f}")

print("\nmemory channel, daemonic gain")
print(f"{'gamma':>6} " + " ".join(f"{'mu=' + str(m):>9}" for m in (0.0, 0.5, 1.0)))
for g in (0.0, 0.25, 0.5, 0.75, 0.99):
    row = [evaluate_point(g, m, 1.0, 181).daemonic_gain for m in (0.0, 0.5, 1.0)]
    print(f"{g:6.2f} " + " ".join(f"{v:9.5f}" for v in row))
