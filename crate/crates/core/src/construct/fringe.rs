use serde::Serialize;

use crate::error::{domain, Result};
use crate::setcore::IntSet;

/// The fringe sets at level `k`:
/// `L = [0, 2k+1] \ ({2} ∪ [k+2, 2k])` and `R = [0, 2k+2] \ ({3} ∪ [k+3, 2k+1])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FringePair {
    pub k: u32,
    pub ell: i64,
    pub r: i64,
    pub left: IntSet,
    pub right: IntSet,
}

pub fn fringe_pair(k: u32) -> Result<FringePair> {
    if k < 2 {
        return domain(format!("fringe sets need k >= 2, got {k}"));
    }
    let k = k as i64;
    let ell = 2 * k + 1;
    let r = 2 * k + 2;
    let left = (0..=ell).filter(|&x| x != 2 && !(k + 2..=2 * k).contains(&x)).collect();
    let right = (0..=r).filter(|&x| x != 3 && !(k + 3..=2 * k + 1).contains(&x)).collect();
    Ok(FringePair { k: k as u32, ell, r, left, right })
}

/// Closed form for `xL + yR`:
/// `[0, T] \ ([T-k+1, T-1] ∪ {T-2k+1})` with `T = x·ell + y·r`.
pub fn predicted_xlyr(x: u32, y: u32, k: u32) -> Result<IntSet> {
    if x + y == 0 {
        return domain("xL + yR needs at least one copy");
    }
    if k < 2 {
        return domain(format!("fringe sets need k >= 2, got {k}"));
    }
    let k = k as i64;
    let t = x as i64 * (2 * k + 1) + y as i64 * (2 * k + 2);
    Ok((0..=t)
        .filter(|&z| !(t - k + 1..t).contains(&z) && z != t - 2 * k + 1)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fringes() {
        let f = fringe_pair(2).unwrap();
        assert_eq!(f.left.to_vec(), vec![0, 1, 3, 5]);
        assert_eq!(f.right.to_vec(), vec![0, 1, 2, 4, 6]);
        let f = fringe_pair(3).unwrap();
        assert_eq!(f.left.to_vec(), vec![0, 1, 3, 4, 7]);
        assert_eq!(f.right.to_vec(), vec![0, 1, 2, 4, 5, 8]);
        assert!(fringe_pair(1).is_err());
    }

    #[test]
    fn complement_forms_agree() {
        // [0, ell] \ ({2} ∪ [ell-k+1, ell-1]) is the other way of writing L, likewise for R.
        for k in 2..10u32 {
            let f = fringe_pair(k).unwrap();
            let k = k as i64;
            let l2: IntSet = (0..=f.ell).filter(|&x| x != 2 && !(f.ell - k + 1..f.ell).contains(&x)).collect();
            let r2: IntSet = (0..=f.r).filter(|&x| x != 3 && !(f.r - k + 1..f.r).contains(&x)).collect();
            assert_eq!(f.left, l2);
            assert_eq!(f.right, r2);
            assert_eq!(f.left.max(), Some(2 * k + 1));
            assert_eq!(f.right.max(), Some(2 * k + 2));
        }
    }

    #[test]
    fn one_copy_of_left_is_left() {
        assert_eq!(predicted_xlyr(1, 0, 2).unwrap().to_vec(), vec![0, 1, 3, 5]);
        assert_eq!(
            predicted_xlyr(1, 1, 2).unwrap().to_vec(),
            vec![0, 1, 2, 3, 4, 5, 6, 7, 9, 11]
        );
        assert!(predicted_xlyr(0, 0, 3).is_err());
    }
}
