use super::spec::GroupSpec;
use super::{GroupError, GroupTable};

/// `C_{2^k}`, element `i` is `g^i`.
pub fn cyclic(k: u32) -> Result<GroupTable, GroupError> {
    let n = 1usize
        .checked_shl(k)
        .filter(|&n| n <= super::MAX_TABLE_ORDER)
        .ok_or(GroupError::OrderCap {
            order: usize::MAX,
            cap: super::MAX_TABLE_ORDER,
        })?;
    let mult = (0..n * n).map(|x| ((x / n + x % n) % n) as u16).collect();
    let z = (k > 0).then_some(n / 2);
    Ok(GroupTable::from_table(format!("C{n}"), n, mult)?.with_central_involution(z))
}

/// `C_2^m`, element bits are coordinates and multiplication is xor.
pub fn elementary(m: u32) -> Result<GroupTable, GroupError> {
    let n = 1usize << m;
    if n > super::MAX_TABLE_ORDER {
        return Err(GroupError::OrderCap {
            order: n,
            cap: super::MAX_TABLE_ORDER,
        });
    }
    let mult = (0..n * n).map(|x| ((x / n) ^ (x % n)) as u16).collect();
    let z = (m == 1).then_some(1);
    Ok(GroupTable::from_table(format!("C2^{m}"), n, mult)?.with_central_involution(z))
}

/// `D8 = <r, s | r^4 = s^2 = 1, srs = r^-1>`, element `a + 4b` is `r^a s^b`.
pub fn dihedral8() -> GroupTable {
    let mut mult = vec![0u16; 64];
    for x in 0..8 {
        let (a, b) = (x % 4, x / 4);
        for y in 0..8 {
            let (c, d) = (y % 4, y / 4);
            // r^a s^b r^c s^d = r^(a + (-1)^b c) s^(b + d)
            let rot = if b == 0 { a + c } else { a + 4 - c };
            mult[x * 8 + y] = (rot % 4 + 4 * ((b + d) % 2)) as u16;
        }
    }
    GroupTable::from_table("D8", 8, mult)
        .expect("D8 table is valid")
        .with_central_involution(Some(2))
}

/// Quaternion group; element `u + 4s` is `(-1)^s` times unit `u` of `1, i, j, k`.
pub fn quaternion8() -> GroupTable {
    // (sign, unit) of unit_u * unit_v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut mult = vec![0u16; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (s, u) = UNIT[x % 4][y % 4];
            let sign = (x / 4 + y / 4 + s) % 2;
            mult[x * 8 + y] = (u + 4 * sign) as u16;
        }
    }
    GroupTable::from_table("Q8", 8, mult)
        .expect("Q8 table is valid")
        .with_central_involution(Some(4))
}

/// Index of the amalgamation point of a leaf, in the leaf's own table.
pub fn designated_involution(leaf: &GroupSpec) -> Result<usize, GroupError> {
    match *leaf {
        GroupSpec::Dihedral8 => Ok(2),
        GroupSpec::Quaternion8 => Ok(4),
        GroupSpec::Cyclic(k) if k >= 1 => Ok(1usize << (k - 1)),
        GroupSpec::Elementary(1) => Ok(1),
        _ => Err(GroupError::NoCentralInvolution(leaf.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_order(g: &GroupTable, o: u32) -> usize {
        g.elements().filter(|&a| g.element_order(a) == o).count()
    }

    #[test]
    fn d8_shape() {
        let d8 = dihedral8();
        assert_eq!(d8.order(), 8);
        assert_eq!(count_order(&d8, 2), 5);
        assert_eq!(count_order(&d8, 4), 2);
        assert!(!d8.is_abelian());
        // r^2 is central
        let z = designated_involution(&GroupSpec::Dihedral8).unwrap();
        assert_eq!(z, d8.square(1));
        assert!(d8.elements().all(|g| d8.mul(g, z) == d8.mul(z, g)));
    }

    #[test]
    fn q8_shape() {
        let q8 = quaternion8();
        assert_eq!(count_order(&q8, 2), 1);
        assert_eq!(count_order(&q8, 4), 6);
        // i j = k, j i = -k
        assert_eq!(q8.mul(1, 2), 3);
        assert_eq!(q8.mul(2, 1), 7);
        assert_eq!(
            designated_involution(&GroupSpec::Quaternion8).unwrap(),
            q8.square(1)
        );
    }

    #[test]
    fn cyclic_and_elementary() {
        let c4 = cyclic(2).unwrap();
        assert_eq!(c4.central_involution(), Some(2));
        assert_eq!(
            designated_involution(&GroupSpec::Cyclic(2)).unwrap(),
            c4.square(1)
        );
        assert_eq!(cyclic(3).unwrap().exponent(), 8);
        let e3 = elementary(3).unwrap();
        assert_eq!(e3.exponent(), 2);
        assert_eq!(e3.central_involution(), None);
        assert!(designated_involution(&GroupSpec::Elementary(2)).is_err());
        assert_eq!(elementary(0).unwrap().order(), 1);
    }
}
