//! Maximum-weight matching in general graphs by the primal-dual blossom
//! method (Edmonds' blossoms, Galil's exposition). Weights are integers so
//! every dual update is exact and the algorithm terminates unconditionally.
//!
//! With `max_cardinality` set the result is a maximum-cardinality matching
//! of maximum weight, which is how the minimum-weight perfect matching
//! wrapper uses it: negate the weights and match everything.

pub const NONE: usize = usize::MAX;

struct Solver<'a> {
    edges: &'a [(usize, usize, i64)],
    weights: Vec<i64>, // doubled input weights
    n: usize,
    max_cardinality: bool,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)], max_cardinality: bool) -> Solver<'a> {
        let nedge = edges.len();
        let weights: Vec<i64> = edges.iter().map(|&(_, _, w)| 2 * w).collect();
        let maxweight = weights.iter().copied().max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * nedge);
        for &(i, j, _) in edges {
            endpoint.push(i);
            endpoint.push(j);
        }
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        Solver {
            edges,
            weights,
            n,
            max_cardinality,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![0; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase: (0..n).chain(std::iter::repeat(NONE).take(n)).collect(),
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![Vec::new(); 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar: std::iter::repeat(maxweight)
                .take(n)
                .chain(std::iter::repeat(0).take(n))
                .collect(),
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    #[inline]
    fn slack(&self, k: usize) -> i64 {
        let (i, j, _) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - self.weights[k]
    }

    fn blossom_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.n {
            out.push(b);
        } else {
            for t in self.blossomchilds[b].clone() {
                self.blossom_leaves(t, out);
            }
        }
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NONE;
        self.bestedge[b] = NONE;
        if t == 1 {
            let mut leaves = Vec::new();
            self.blossom_leaves(b, &mut leaves);
            self.queue.extend(leaves);
        } else {
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != NONE);
            let m = self.mate[base];
            self.assign_label(self.endpoint[m], 1, m ^ 1);
        }
    }

    /// Trace back from both ends of a tight S-S edge; returns the base of the
    /// common ancestor blossom or NONE when the paths reach different roots
    /// (an augmenting path).
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], 1);
            path.push(b);
            self.label[b] |= 4;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], 2);
                debug_assert!(self.labelend[b] != NONE);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] &= !4;
        }
        base
    }

    /// Contract the circuit through `base` closed by tight edge `k` into a
    /// new S-blossom.
    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom arena exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;

        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            debug_assert!(
                self.label[bv] == 2
                    || (self.label[bv] == 1
                        && self.labelend[bv] == self.mate[self.blossombase[bv]])
            );
            debug_assert!(self.labelend[bv] != NONE);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            debug_assert!(
                self.label[bw] == 2
                    || (self.label[bw] == 1
                        && self.labelend[bw] == self.mate[self.blossombase[bw]])
            );
            debug_assert!(self.labelend[bw] != NONE);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }

        debug_assert_eq!(self.label[bb], 1);
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;

        let mut leaves = Vec::new();
        for &child in &path {
            self.blossom_leaves(child, &mut leaves);
        }
        for &leaf in &leaves {
            if self.label[self.inblossom[leaf]] == 2 {
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }
        self.blossomchilds[b] = path;
        self.blossomendps[b] = endps;

        // Least-slack edges from the new blossom to every other S-blossom.
        let mut bestedgeto = vec![NONE; 2 * self.n];
        for bv in self.blossomchilds[b].clone() {
            let nblists: Vec<Vec<usize>> = if self.blossombestedges[bv].is_empty() {
                let mut leaves = Vec::new();
                self.blossom_leaves(bv, &mut leaves);
                leaves
                    .iter()
                    .map(|&v| self.neighbend[v].iter().map(|&p| p / 2).collect())
                    .collect()
            } else {
                vec![self.blossombestedges[bv].clone()]
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.blossombestedges[bv].clear();
            self.bestedge[bv] = NONE;
        }
        self.blossombestedges[b] = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        self.bestedge[b] = NONE;
        for k in self.blossombestedges[b].clone() {
            if self.bestedge[b] == NONE || self.slack(k) < self.slack(self.bestedge[b]) {
                self.bestedge[b] = k;
            }
        }
    }

    /// Undo a blossom contraction, relabeling its children when the
    /// expansion happens mid-stage.
    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                let mut leaves = Vec::new();
                self.blossom_leaves(s, &mut leaves);
                for leaf in leaves {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == 2 {
            debug_assert!(self.labelend[b] != NONE);
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let nchilds = self.blossomchilds[b].len() as isize;
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= nchilds;
                (1, 0)
            } else {
                (-1, 1)
            };
            let child_at =
                |s: &Solver, idx: isize| s.blossomchilds[b][idx.rem_euclid(nchilds) as usize];
            let endp_at =
                |s: &Solver, idx: isize| s.blossomendps[b][idx.rem_euclid(nchilds) as usize];

            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = 0;
                let q = endp_at(self, j - endptrick as isize) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                let allowed = endp_at(self, j - endptrick as isize) / 2;
                self.allowedge[allowed] = true;
                j += jstep;
                p = endp_at(self, j - endptrick as isize) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = child_at(self, j);
            self.label[self.endpoint[p ^ 1]] = 2;
            self.label[bv] = 2;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while child_at(self, j) != entrychild {
                let bv = child_at(self, j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let mut leaves = Vec::new();
                self.blossom_leaves(bv, &mut leaves);
                let mut labelled = NONE;
                for &v in &leaves {
                    if self.label[v] != 0 {
                        labelled = v;
                        break;
                    }
                }
                if labelled != NONE {
                    debug_assert_eq!(self.label[labelled], 2);
                    debug_assert_eq!(self.inblossom[labelled], bv);
                    self.label[labelled] = 0;
                    self.label[self.endpoint[self.mate[self.blossombase[bv]]]] = 0;
                    let le = self.labelend[labelled];
                    self.assign_label(labelled, 2, le);
                }
                j += jstep;
            }
        }
        self.label[b] = 0;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b].clear();
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Swap matched and unmatched edges along the path from `v` through the
    /// blossom tree down to the blossom base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let nchilds = self.blossomchilds[b].len() as isize;
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap() as isize;
        let mut j = i;
        let (jstep, endptrick): (isize, usize) = if i & 1 != 0 {
            j -= nchilds;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][j.rem_euclid(nchilds) as usize];
            let p = self.blossomendps[b][(j - endptrick as isize).rem_euclid(nchilds) as usize]
                ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][j.rem_euclid(nchilds) as usize];
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        let i = i as usize;
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    /// Augment the matching along the alternating trees joined by edge `k`.
    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], 1);
                debug_assert_eq!(self.labelend[bs], self.mate[self.blossombase[bs]]);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], 2);
                debug_assert!(self.labelend[bt] != NONE);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(mut self) -> Vec<usize> {
        if self.edges.is_empty() {
            return self.mate;
        }
        for _ in 0..self.n {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for list in self.blossombestedges[self.n..].iter_mut() {
                list.clear();
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..self.n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], 1);
                    for p in self.neighbend[v].clone() {
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                debug_assert_eq!(self.label[self.inblossom[w]], 2);
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // Choose the smallest admissible dual update.
                let mut deltatype = -1i32;
                let mut delta = 0i64;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                if !self.max_cardinality {
                    deltatype = 1;
                    delta = self.dualvar[..self.n].iter().copied().min().unwrap().max(0);
                }
                for v in 0..self.n {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * self.n {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == 1
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if deltatype == -1 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in self.n..2 * self.n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == 2
                        && (deltatype == -1 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == -1 {
                    // No further progress: maximum cardinality reached.
                    debug_assert!(self.max_cardinality);
                    deltatype = 1;
                    delta = self.dualvar[..self.n].iter().copied().min().unwrap().max(0);
                }

                for v in 0..self.n {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in self.n..2 * self.n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], 1);
                        self.queue.push(i);
                    }
                    _ => {
                        self.expand_blossom(deltablossom, false);
                    }
                }
            }

            if !augmented {
                break;
            }
            for b in self.n..2 * self.n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        let mut mate = self.mate;
        for v in 0..self.n {
            if mate[v] != NONE {
                mate[v] = self.endpoint[mate[v]];
            }
        }
        for v in 0..self.n {
            debug_assert!(mate[v] == NONE || mate[mate[v]] == v);
        }
        mate
    }
}

/// Compute a maximum-weight matching; returns `mate[v]` = partner of `v` or
/// `NONE`. With `max_cardinality`, only maximum-cardinality matchings are
/// considered. Vertices are `0..n_vertices`; parallel edges and self-loops
/// are not allowed.
pub fn max_weight_matching(
    n_vertices: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<usize> {
    debug_assert!(edges.iter().all(|&(i, j, _)| i != j && i < n_vertices && j < n_vertices));
    Solver::new(n_vertices, edges, max_cardinality).solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(edges: &[(usize, usize, i64)], mate: &[usize]) -> i64 {
        edges
            .iter()
            .filter(|&&(i, j, _)| mate[i] == j)
            .map(|&(_, _, w)| w)
            .sum()
    }

    /// Exhaustive maximum-weight matching by recursion over vertices.
    fn brute_force(n: usize, edges: &[(usize, usize, i64)], require_perfect: bool) -> i64 {
        let mut adj = vec![vec![]; n];
        for &(i, j, w) in edges {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        fn go(
            v: usize,
            n: usize,
            used: &mut Vec<bool>,
            adj: &[Vec<(usize, i64)>],
            require_perfect: bool,
        ) -> Option<i64> {
            if v == n {
                return Some(0);
            }
            if used[v] {
                return go(v + 1, n, used, adj, require_perfect);
            }
            let mut best = None;
            if !require_perfect {
                best = go(v + 1, n, used, adj, require_perfect);
            }
            used[v] = true;
            for &(w, wt) in &adj[v] {
                if !used[w] && w > v {
                    used[w] = true;
                    if let Some(rest) = go(v + 1, n, used, adj, require_perfect) {
                        let cand = rest + wt;
                        if best.map_or(true, |b| cand > b) {
                            best = Some(cand);
                        }
                    }
                    used[w] = false;
                }
            }
            used[v] = false;
            best
        }
        go(0, n, &mut vec![false; n], &adj, require_perfect).unwrap_or(i64::MIN)
    }

    #[test]
    fn empty_and_trivial() {
        assert_eq!(max_weight_matching(0, &[], false), Vec::<usize>::new());
        let mate = max_weight_matching(2, &[(0, 1, 5)], false);
        assert_eq!(mate, vec![1, 0]);
    }

    #[test]
    fn negative_weight_skipped_unless_cardinality_forced() {
        let edges = [(0, 1, -3)];
        let mate = max_weight_matching(2, &edges, false);
        assert_eq!(mate, vec![NONE, NONE]);
        let mate = max_weight_matching(2, &edges, true);
        assert_eq!(mate, vec![1, 0]);
    }

    #[test]
    fn classic_blossom_cases() {
        // Known tricky instances: nested blossoms, relabeling, expansion.
        let edges = [(1, 2, 9), (1, 3, 8), (2, 3, 10), (3, 4, 7)];
        let mate = max_weight_matching(5, &edges, false);
        assert_eq!(total(&edges, &mate), brute_force(5, &edges, false));

        let edges = [(1, 2, 9), (1, 3, 8), (2, 3, 10), (3, 4, 7), (1, 6, 5), (4, 5, 6)];
        let mate = max_weight_matching(7, &edges, false);
        assert_eq!(total(&edges, &mate), brute_force(7, &edges, false));

        // S-blossom gets expanded during a stage (van Rantwijk's test 24).
        let edges = [
            (1, 2, 8),
            (1, 3, 8),
            (2, 3, 10),
            (2, 4, 12),
            (3, 5, 12),
            (4, 5, 14),
            (4, 6, 12),
            (5, 7, 12),
            (6, 7, 14),
            (7, 8, 12),
        ];
        let mate = max_weight_matching(9, &edges, false);
        assert_eq!(total(&edges, &mate), brute_force(9, &edges, false));

        // Nested S-blossom expansion (test 45-ish family).
        let edges = [
            (1, 2, 40),
            (1, 3, 40),
            (2, 3, 60),
            (2, 4, 55),
            (3, 5, 55),
            (4, 5, 50),
            (1, 8, 15),
            (5, 7, 30),
            (7, 6, 10),
            (8, 10, 10),
            (4, 9, 30),
        ];
        let mate = max_weight_matching(11, &edges, false);
        assert_eq!(total(&edges, &mate), brute_force(11, &edges, false));
    }

    #[test]
    fn random_graphs_match_brute_force() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(20);
        for case in 0..400 {
            let n = rng.gen_range(2..=10);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.6) {
                        edges.push((i, j, rng.gen_range(-50i64..100)));
                    }
                }
            }
            if edges.is_empty() {
                continue;
            }
            let mate = max_weight_matching(n, &edges, false);
            let got = total(&edges, &mate);
            let want = brute_force(n, &edges, false);
            assert_eq!(got, want, "case {case}: n={n} edges={edges:?}");
        }
    }

    #[test]
    fn random_max_cardinality_perfect() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        for case in 0..300 {
            let half = rng.gen_range(1..=5);
            let n = 2 * half;
            // Complete graphs always admit a perfect matching.
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    edges.push((i, j, rng.gen_range(-100i64..100)));
                }
            }
            let mate = max_weight_matching(n, &edges, true);
            assert!(mate.iter().all(|&m| m != NONE), "case {case} not perfect");
            let got = total(&edges, &mate);
            let want = brute_force(n, &edges, true);
            assert_eq!(got, want, "case {case}: n={n}");
        }
    }
}
