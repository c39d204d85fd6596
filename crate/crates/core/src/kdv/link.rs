use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Report;
use crate::bell::link_check;
use crate::error::Result;
use crate::index::MultiIndex;
use crate::sample;

/// Every `(kx, kt, k1)` with `kx + kt ≤ 3`, `k1 ≤ 1`, except the empty index.
pub fn link_indices() -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for k1 in 0..=1 {
        for kx in 0..=3 {
            for kt in 0..=3 - kx {
                if kx + kt + k1 > 0 {
                    out.push(MultiIndex::new(kx, kt, 0, k1, 0));
                }
            }
        }
    }
    out
}

/// The Bell/Hirota link on `pairs` random tau pairs; pair `k` is drawn from
/// `ChaCha8(seed + k)`.
pub fn check_bell_link(seed: u64, pairs: usize) -> Result<Report> {
    let mut rep = Report::new("bell-link");
    let idxs = link_indices();
    for k in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let p = sample::tau_pair(&mut rng);
        for idx in &idxs {
            let res = link_check(&p.f, &p.g, idx)?;
            rep.zero(&format!("pair {k} index {idx}"), &res.residual);
        }
    }
    rep.note(format!(
        "seed {seed}, {pairs} pairs, {} indices each",
        idxs.len()
    ));
    Ok(rep)
}
