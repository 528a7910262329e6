//! Eigenvalue clustering: connected components of the δ-proximity graph.

use num_complex::Complex64;

/// Cluster assignment of eigenvalues and, after reordering, the block start
/// indices of the confluent arrangement.
#[derive(Debug, Clone)]
pub struct BlockPattern {
    /// eigenvalue index -> cluster id
    pub cluster_of: Vec<usize>,
    /// start index of each diagonal block after reordering (ascending)
    pub boundaries: Vec<usize>,
    pub delta: f64,
}

impl BlockPattern {
    pub fn num_clusters(&self) -> usize {
        self.cluster_of.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_clusters()];
        for &c in &self.cluster_of {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Connected-component clustering under |λ_i - λ_j| ≤ δ. Cluster ids are
/// deterministic: ascending by the cluster's smallest member in
/// lexicographic (Re, Im) order.
pub fn cluster_eigenvalues(eigs: &[Complex64], delta: f64) -> BlockPattern {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = i;
        while parent[c] != c {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= delta {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    // roots -> representative smallest member
    let mut reps: Vec<(usize, Complex64)> = Vec::new();
    let mut root_of: Vec<usize> = vec![0; n];
    for i in 0..n {
        root_of[i] = find(&mut parent, i);
    }
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = root_of[i];
        if !seen.contains(&r) {
            seen.push(r);
            let mut smallest = eigs[i];
            for j in 0..n {
                if root_of[j] == r {
                    let cand = eigs[j];
                    if (cand.re, cand.im) < (smallest.re, smallest.im) {
                        smallest = cand;
                    }
                }
            }
            reps.push((r, smallest));
        }
    }
    reps.sort_by(|a, b| a.1.re.total_cmp(&b.1.re).then(a.1.im.total_cmp(&b.1.im)));
    let mut id_of_root = std::collections::HashMap::new();
    for (id, &(root, _)) in reps.iter().enumerate() {
        id_of_root.insert(root, id);
    }
    let cluster_of: Vec<usize> = (0..n).map(|i| id_of_root[&root_of[i]]).collect();

    // boundaries for the confluent arrangement (cluster id order)
    let mut sizes = vec![0usize; reps.len()];
    for &c in &cluster_of {
        sizes[c] += 1;
    }
    let mut boundaries = Vec::with_capacity(reps.len());
    let mut acc = 0;
    for s in &sizes {
        boundaries.push(acc);
        acc += s;
    }
    BlockPattern { cluster_of, boundaries, delta }
}
