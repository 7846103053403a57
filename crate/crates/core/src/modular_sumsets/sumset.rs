use super::residue_set::ResidueSet;
use crate::error::Result;

/// Cyclic boolean convolution: `{a + b mod m}`.
pub fn sumset2(a: &ResidueSet, b: &ResidueSet) -> Result<ResidueSet> {
    a.check_same_modulus(b)?;
    let m = a.modulus() as usize;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut out = vec![false; m];
    let large = large.members();
    for s in small.iter().map(|s| s as usize) {
        // rotate `large` by s and OR it in
        for (dst, &bit) in out[s..].iter_mut().zip(large) {
            *dst |= bit;
        }
        for (dst, &bit) in out[..s].iter_mut().zip(&large[m - s..]) {
            *dst |= bit;
        }
    }
    ResidueSet::from_members(out)
}

/// `A + B + C` in `Z_m`, as two pairwise convolutions.
pub fn sumset3(a: &ResidueSet, b: &ResidueSet, c: &ResidueSet) -> Result<ResidueSet> {
    a.check_same_modulus(b)?;
    a.check_same_modulus(c)?;
    sumset2(&sumset2(a, b)?, c)
}

/// Bitmask versions for `m <= 128`, used by the exhaustive enumerations.
pub(crate) mod mask {
    pub fn full(m: u64) -> u128 {
        if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        }
    }

    pub fn rotate(x: u128, s: u64, m: u64) -> u128 {
        if s == 0 {
            x
        } else {
            ((x << s) | (x >> (m - s))) & full(m)
        }
    }

    pub fn sum2(a: u128, b: u128, m: u64) -> u128 {
        let (small, large) = if a.count_ones() <= b.count_ones() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out = 0;
        let mut rest = small;
        while rest != 0 {
            let s = rest.trailing_zeros() as u64;
            rest &= rest - 1;
            out |= rotate(large, s, m);
        }
        out
    }

    #[cfg(test)]
    pub fn sum3(a: u128, b: u128, c: u128, m: u64) -> u128 {
        sum2(sum2(a, b, m), c, m)
    }
}
