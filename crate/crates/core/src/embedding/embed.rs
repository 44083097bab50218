use crate::error::{Error, Result};
use crate::generators::ternary::{all_sequences, gs_edge_unchecked, seq_string};
use crate::hypergraph::Hypergraph3;
use serde::{Serialize, Serializer};

/// Largest total vertex count the backtracking search accepts.
pub const EMBED_CAP: usize = 36;
/// Largest depth the backtracking search accepts.
pub const EMBED_DEPTH_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub n: usize,
    #[serde(serialize_with = "ser_maps")]
    pub maps: [Vec<Vec<u8>>; 3],
}

fn ser_maps<S: Serializer>(m: &[Vec<Vec<u8>>; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = m.iter().map(|p| p.iter().map(|q| seq_string(q)).collect()).collect();
    strs.serialize(s)
}

/// Injective on each part and edge-for-edge equal to `GS_3(n)`.
pub fn validate_embedding(h: &Hypergraph3, e: &Embedding) -> bool {
    let dims = h.dims();
    for u in 0..3 {
        let m = &e.maps[u];
        if m.len() != dims[u] || m.iter().any(|s| s.len() != e.n || s.iter().any(|&c| c >= 3)) {
            return false;
        }
        let mut sorted = m.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != m.len() {
            return false;
        }
    }
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                if gs_edge_unchecked(3, &e.maps[0][x], &e.maps[1][y], &e.maps[2][z]) != h.is_edge(x, y, z) {
                    return false;
                }
            }
        }
    }
    true
}

struct Search<'a> {
    h: &'a Hypergraph3,
    cands: Vec<Vec<u8>>,
    slots: Vec<(usize, usize)>,
    assign: [Vec<Option<usize>>; 3],
}

impl Search<'_> {
    fn consistent(&self, u: usize, v: usize, c: usize) -> bool {
        if self.assign[u].iter().any(|&a| a == Some(c)) {
            return false;
        }
        let dims = self.h.dims();
        let (p, q) = crate::hypergraph::other_parts(u);
        for a in 0..dims[p] {
            let Some(ca) = self.assign[p][a] else { continue };
            for b in 0..dims[q] {
                let Some(cb) = self.assign[q][b] else { continue };
                let mut t = [0; 3];
                let mut s: [&[u8]; 3] = [&[], &[], &[]];
                t[u] = v;
                t[p] = a;
                t[q] = b;
                s[u] = &self.cands[c];
                s[p] = &self.cands[ca];
                s[q] = &self.cands[cb];
                if gs_edge_unchecked(3, s[0], s[1], s[2]) != self.h.is_edge_t(t) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.slots.len() {
            return true;
        }
        let (u, v) = self.slots[k];
        let range: Vec<usize> = if v == 0 && u < 2 { vec![0] } else { (0..self.cands.len()).collect() };
        for c in range {
            if self.consistent(u, v, c) {
                self.assign[u][v] = Some(c);
                if self.run(k + 1) {
                    return true;
                }
                self.assign[u][v] = None;
            }
        }
        false
    }
}

/// Backtracking search for an induced embedding into `GS_3(n)`; the first
/// vertices of parts 0 and 1 go to the zero sequence, as translations
/// `(x + a, y + b, z - a - b)` preserve every edge.
pub fn embed_into_gs3(h: &Hypergraph3, n: usize) -> Result<Option<Embedding>> {
    let dims = h.dims();
    let total: usize = dims.iter().sum();
    if total > EMBED_CAP {
        return Err(Error::CapExceeded { what: "vertex count".into(), size: total, cap: EMBED_CAP });
    }
    if n > EMBED_DEPTH_CAP {
        return Err(Error::CapExceeded { what: "depth".into(), size: n, cap: EMBED_DEPTH_CAP });
    }
    if n == 0 {
        return Err(Error::Parameter("depth must be positive".into()));
    }
    let cands = all_sequences(3, n);
    if dims.iter().any(|&d| d > cands.len()) {
        return Ok(None);
    }
    let mut slots = Vec::with_capacity(total);
    for v in 0..*dims.iter().max().unwrap_or(&0) {
        for (u, &d) in dims.iter().enumerate() {
            if v < d {
                slots.push((u, v));
            }
        }
    }
    let mut s = Search { h, cands, slots, assign: dims.map(|d| vec![None; d]) };
    if !s.run(0) {
        return Ok(None);
    }
    let maps = [0, 1, 2].map(|u| s.assign[u].iter().map(|c| s.cands[c.unwrap_or(0)].clone()).collect());
    let e = Embedding { n, maps };
    if !validate_embedding(h, &e) {
        return Err(Error::Contract("embedding failed revalidation".into()));
    }
    Ok(Some(e))
}
