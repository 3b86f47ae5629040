// Deterministic force-directed fallback for custom quivers without server
// layout hints.  Vertices start on a circle (fixed order, no randomness) and
// relax for a fixed number of rounds, so repeated calls give identical
// positions.

export function fallbackLayout(
  ids: string[],
  edges: [string, string][],
  width = 640,
  height = 480,
): Record<string, [number, number]> {
  const n = ids.length;
  const pos = new Map<string, [number, number]>();
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 60;
  ids.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / Math.max(n, 1);
    pos.set(id, [cx + radius * Math.cos(angle), cy + radius * Math.sin(angle)]);
  });
  const neighbors = edges.map(([a, b]) => [a, b] as const);
  const rounds = 60;
  const target = 130;
  for (let round = 0; round < rounds; round += 1) {
    const force = new Map<string, [number, number]>(ids.map((id) => [id, [0, 0]]));
    for (let i = 0; i < n; i += 1) {
      for (let j = i + 1; j < n; j += 1) {
        const [ax, ay] = pos.get(ids[i])!;
        const [bx, by] = pos.get(ids[j])!;
        const dx = ax - bx;
        const dy = ay - by;
        const d2 = Math.max(dx * dx + dy * dy, 1);
        const push = 16000 / d2;
        const d = Math.sqrt(d2);
        const fi = force.get(ids[i])!;
        const fj = force.get(ids[j])!;
        fi[0] += (dx / d) * push;
        fi[1] += (dy / d) * push;
        fj[0] -= (dx / d) * push;
        fj[1] -= (dy / d) * push;
      }
    }
    for (const [a, b] of neighbors) {
      const [ax, ay] = pos.get(a)!;
      const [bx, by] = pos.get(b)!;
      const dx = bx - ax;
      const dy = by - ay;
      const d = Math.max(Math.hypot(dx, dy), 1);
      const pull = (d - target) * 0.05;
      const fa = force.get(a)!;
      const fb = force.get(b)!;
      fa[0] += (dx / d) * pull;
      fa[1] += (dy / d) * pull;
      fb[0] -= (dx / d) * pull;
      fb[1] -= (dy / d) * pull;
    }
    const cool = 1 - round / rounds;
    for (const id of ids) {
      const [x, y] = pos.get(id)!;
      const [fx, fy] = force.get(id)!;
      pos.set(id, [
        Math.min(width - 40, Math.max(40, x + fx * 0.12 * cool)),
        Math.min(height - 40, Math.max(40, y + fy * 0.12 * cool)),
      ]);
    }
  }
  const out: Record<string, [number, number]> = {};
  for (const id of ids) {
    const [x, y] = pos.get(id)!;
    out[id] = [Math.round(x * 100) / 100, Math.round(y * 100) / 100];
  }
  return out;
}
