//! Brute-force oracles for the acceptance suite, deliberately independent of
//! the library's implementations: adjacency-matrix clustering, Floyd–Warshall
//! geodesics, direct Pearson assortativity and an inverse-CDF power-law
//! sampler.

/// Dense adjacency matrix from an undirected edge list.
pub fn adjacency_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(u, v) in edges {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0usize; n];
    for &(u, v) in edges {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

pub fn density(n: usize, edges: &[(usize, usize)]) -> Option<f64> {
    if n < 2 {
        return None;
    }
    Some(2.0 * edges.len() as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// Average of per-node neighbor-pair connectivity; degree-<2 nodes count 0.
pub fn avg_local_clustering(n: usize, edges: &[(usize, usize)]) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let adj = adjacency_matrix(n, edges);
    let mut total = 0.0;
    for v in 0..n {
        let neighbors: Vec<usize> = (0..n).filter(|&w| adj[v][w]).collect();
        let d = neighbors.len();
        if d < 2 {
            continue;
        }
        let mut closed = 0usize;
        for i in 0..d {
            for j in (i + 1)..d {
                if adj[neighbors[i]][neighbors[j]] {
                    closed += 1;
                }
            }
        }
        total += closed as f64 / (d * (d - 1) / 2) as f64;
    }
    total / n as f64
}

/// 3 x triangles / connected triples by exhaustive triple enumeration.
#[allow(clippy::needless_range_loop)]
pub fn global_transitivity(n: usize, edges: &[(usize, usize)]) -> f64 {
    let adj = adjacency_matrix(n, edges);
    let mut triangles = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if !adj[i][j] {
                continue;
            }
            for k in (j + 1)..n {
                if adj[i][k] && adj[j][k] {
                    triangles += 1;
                }
            }
        }
    }
    let triples: usize = degrees(n, edges).iter().map(|&d| d * (d - 1) / 2).sum();
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}

const INF: u32 = u32::MAX / 2;

/// All-pairs shortest paths by Floyd–Warshall.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut dist = vec![vec![INF; n]; n];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in edges {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let dist = floyd_warshall(n, edges);
    dist[0].iter().all(|&d| d < INF)
}

/// Mean shortest-path distance over unordered pairs of the largest
/// component (ties to the component holding the smallest node).
pub fn mean_geodesic_largest_component(n: usize, edges: &[(usize, usize)]) -> Option<f64> {
    if edges.is_empty() {
        return None;
    }
    let dist = floyd_warshall(n, edges);
    let mut assigned = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&w| dist[v][w] < INF).collect();
        for &w in &comp {
            assigned[w] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    let mut total = 0u64;
    let mut pairs = 0u64;
    for i in 0..best.len() {
        for j in (i + 1)..best.len() {
            total += dist[best[i]][best[j]] as u64;
            pairs += 1;
        }
    }
    if pairs == 0 {
        None
    } else {
        Some(total as f64 / pairs as f64)
    }
}

/// Pearson correlation over ordered endpoint-degree pairs; `None` when all
/// endpoint degrees are equal.
pub fn degree_assortativity(n: usize, edges: &[(usize, usize)]) -> Option<f64> {
    if edges.is_empty() {
        return None;
    }
    let deg = degrees(n, edges);
    let mut xs: Vec<f64> = Vec::with_capacity(edges.len() * 2);
    let mut ys: Vec<f64> = Vec::with_capacity(edges.len() * 2);
    for &(u, v) in edges {
        xs.push(deg[u] as f64);
        ys.push(deg[v] as f64);
        xs.push(deg[v] as f64);
        ys.push(deg[u] as f64);
    }
    let first = xs[0];
    if xs.iter().all(|&x| x == first) {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / m;
    let vx = xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>() / m;
    let vy = ys.iter().map(|y| (y - my) * (y - my)).sum::<f64>() / m;
    Some(cov / (vx * vy).sqrt())
}

/// Inverse-CDF sampler over a truncated discrete power law
/// `p(x) ∝ x^(-alpha)`, `x >= x_min`. The cumulative table extends far enough
/// that the truncated mass is negligible against the recovery tolerance.
pub struct PowerLawSampler {
    cumulative: Vec<f64>,
    total: f64,
    x_min: u64,
}

impl PowerLawSampler {
    pub fn new(alpha: f64, x_min: u64) -> Self {
        let table_len = 2_000_000usize;
        let mut cumulative = Vec::with_capacity(table_len);
        let mut total = 0.0;
        for i in 0..table_len {
            total += ((x_min + i as u64) as f64).powf(-alpha);
            cumulative.push(total);
        }
        PowerLawSampler {
            cumulative,
            total,
            x_min,
        }
    }

    pub fn sample(&self, rng: &mut impl rand::Rng) -> usize {
        let u: f64 = rng.gen::<f64>() * self.total;
        let idx = self.cumulative.partition_point(|&c| c < u);
        self.x_min as usize + idx.min(self.cumulative.len() - 1)
    }
}
