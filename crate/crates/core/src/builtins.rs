//! Named example arrangements.
//!
//! `x2` and `x3` are transcribed from a drawing of two real line arrangements
//! (the 3-point lines of the picture become the multi-flats); they carry no
//! normals.

use crate::error::{Error, Result};
use crate::graphic::{family_g_i, graphic_arrangement, Graph};
use crate::lattice::Arrangement;

/// Every builtin name, in a fixed order.
pub fn names() -> Vec<String> {
    let mut out = vec!["x2".to_string(), "x3".to_string()];
    out.extend((3..=6).map(|l| format!("braid{l}")));
    out.extend((2..=5).map(|m| format!("pencil{m}")));
    out.push("wheel".to_string());
    out.extend((0..=3).map(|i| format!("gfam-{i}")));
    out
}

/// One-line description for `examples`.
pub fn describe(name: &str) -> Option<String> {
    let text = match name {
        "x2" => "7 lines, five triple points (transcribed from a figure)".to_string(),
        "x3" => "6 lines, three triple points (transcribed from a figure)".to_string(),
        "wheel" => "graphic arrangement of the 4-wheel W4".to_string(),
        _ => {
            if let Some(l) = name.strip_prefix("braid") {
                format!("braid arrangement: graphic arrangement of K{l}")
            } else if let Some(m) = name.strip_prefix("pencil") {
                format!("{m} lines through one point")
            } else if let Some(i) = name.strip_prefix("gfam-") {
                format!("graphic arrangement of the cone family G^{i}")
            } else {
                return None;
            }
        }
    };
    Some(text)
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// The underlying graph, for builtins that are graphic.
pub fn builtin_graph(name: &str) -> Option<Graph> {
    if name == "wheel" {
        return Some(Graph::wheel());
    }
    if let Some(l) = parse_suffix(name, "braid") {
        return (3..=6).contains(&l).then(|| Graph::complete(l));
    }
    if let Some(i) = parse_suffix(name, "gfam-") {
        return Some(family_g_i(i));
    }
    None
}

pub fn builtin(name: &str) -> Result<Arrangement> {
    let unknown = || Error::InvalidInput(format!("unknown builtin '{name}'"));
    let a = match name {
        "x2" => Arrangement::from_flats(
            7,
            &[vec![0, 1, 2], vec![0, 3, 6], vec![2, 5, 6], vec![3, 4, 5], vec![1, 4, 6]],
        )?,
        "x3" => Arrangement::from_flats(6, &[vec![0, 1, 2], vec![0, 3, 4], vec![2, 4, 5]])?,
        _ => {
            if let Some(g) = builtin_graph(name) {
                graphic_arrangement(&g)?
            } else if let Some(m) = parse_suffix(name, "pencil") {
                if m < 2 {
                    return Err(unknown());
                }
                let mut normals = vec![vec![1, 0], vec![0, 1]];
                normals.extend((1..m as i64 - 1).map(|k| vec![1, k]));
                Arrangement::from_normals(&normals)?
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(a.with_label(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_name_builds() {
        for name in names() {
            let a = builtin(&name).unwrap();
            assert!(a.validate().is_ok(), "{name}");
            assert!(describe(&name).is_some());
        }
    }

    #[test]
    fn census() {
        let b = |n: &str| builtin(n).unwrap();
        assert_eq!((b("x2").b1(), b("x2").multi_flats().len()), (7, 5));
        assert_eq!((b("x3").b1(), b("x3").multi_flats().len()), (6, 3));
        assert_eq!((b("braid4").b1(), b("braid4").multi_flats().len()), (6, 4));
        let p = b("pencil4");
        assert_eq!(p.flats.len(), 1);
        assert_eq!(p.flats[0].mu, 3);
        assert_eq!(b("pencil2").flats[0].mu, 1);
    }

    #[test]
    fn unknown_names() {
        for n in ["", "x4", "braid7", "pencil1", "pencilx", "gfam-"] {
            assert!(builtin(n).is_err(), "{n}");
        }
    }
}
