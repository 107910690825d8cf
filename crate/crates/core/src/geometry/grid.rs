use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exactnum::Rat;

use super::window::Window;

/// Cell-centred sample points of a `res^s` grid over the window.
pub fn grid_points(w: &Window, res: usize) -> Vec<Vec<Rat>> {
    let s = w.dim();
    let res = res.max(1);
    let ranges: Vec<(i64, i64)> = vec![(0, res as i64 - 1); s];
    super::window::lattice_box(&ranges)
        .into_iter()
        .map(|idx| {
            (0..s)
                .map(|i| {
                    let t = Rat::new(2 * idx[i] + 1, 2 * res as i64);
                    &w.lo()[i] + &(t * (&w.hi()[i] - &w.lo()[i]))
                })
                .collect()
        })
        .collect()
}

/// CSV rows `v1,…,vs,value,value_f64`; points where `f` reports a wall are
/// skipped.
pub fn sample_csv(w: &Window, res: usize, f: impl Fn(&[Rat]) -> Result<Rat>) -> Result<String> {
    let s = w.dim();
    let mut out = String::new();
    let header: Vec<String> = (1..=s).map(|i| format!("v{i}")).collect();
    writeln!(out, "{},value,value_f64", header.join(",")).unwrap();
    for p in grid_points(w, res) {
        let val = match f(&p) {
            Ok(v) => v,
            Err(Error::IrregularPoint) => continue,
            Err(e) => return Err(e),
        };
        let coords: Vec<String> = p.iter().map(Rat::to_string).collect();
        writeln!(out, "{},{},{}", coords.join(","), val, val.to_f64()).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let w = Window::from_ints(&[0], &[2]).unwrap();
        let pts = grid_points(&w, 4);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0][0], Rat::new(1, 4));
        let csv = sample_csv(&w, 2, |v| Ok(v[0].clone())).unwrap();
        assert_eq!(csv, "v1,value,value_f64\n1/2,1/2,0.5\n3/2,3/2,1.5\n");
    }
}
