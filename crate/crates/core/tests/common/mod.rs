#![allow(dead_code)]

use dissociation::treegen::decode_pruefer;
use dissociation::Forest;
use rand::Rng;

pub const LT8: &str = "# path u1..u4 with a pendant on each\nu1 u2\nu2 u3\nu3 u4\nu1 v1\nu2 v2\nu3 v3\nu4 v4\n";

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Forest {
    match n {
        0 | 1 => Forest::empty(n),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            decode_pruefer(&seq, n)
        }
    }
}

/// Random labeled forest: each vertex after the first either starts a new
/// component or hangs off an earlier vertex.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize, p_new: f64) -> Forest {
    let parents: Vec<Option<usize>> = (0..n)
        .map(|v| if v == 0 || rng.gen_bool(p_new) { None } else { Some(rng.gen_range(0..v)) })
        .collect();
    Forest::from_parents(&parents).unwrap()
}

/// Forest from a parent vector where `parents[v] % (v + 1) == v` means "root".
pub fn forest_from_codes(codes: &[usize]) -> Forest {
    let parents: Vec<Option<usize>> = codes
        .iter()
        .enumerate()
        .map(|(v, &c)| {
            let p = c % (v + 1);
            (p != v).then_some(p)
        })
        .collect();
    Forest::from_parents(&parents).unwrap()
}
