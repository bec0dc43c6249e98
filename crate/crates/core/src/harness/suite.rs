use crate::error::Result;
use crate::matgroup::{FiniteMatrixGroup, GroupElement};

/// A small hand-built group used by `selftest` and the tests.
#[derive(Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: FiniteMatrixGroup,
}

fn named(name: &str, gens: Vec<GroupElement>, cap: usize) -> Result<NamedGroup> {
    Ok(NamedGroup {
        name: name.to_string(),
        group: FiniteMatrixGroup::close(gens, cap)?,
    })
}

/// Pseudo-reflection-free groups: binary dihedral groups of orders 8 to 24
/// (order 8 is the quaternion group), `<diag(zeta_3, zeta_3), J>` in `GL_2`,
/// and the tetrahedral, octahedral and Heisenberg groups in `GL_3`.
pub fn reference_groups() -> Result<Vec<NamedGroup>> {
    let cap = super::closure_cap();
    let j = |m: u64| GroupElement::from_integers(m, &[vec![0, 1], vec![-1, 0]]);
    let cycle = |m: u64| GroupElement::from_integers(m, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    let mut out = Vec::new();
    for m in 2..=6u64 {
        let name = if m == 2 { "quaternion".to_string() } else { format!("binary dihedral {}", 4 * m) };
        out.push(named(&name, vec![GroupElement::diagonal_roots(2 * m, &[1, -1]), j(2 * m)?], cap)?);
    }
    out.push(named("mixed12", vec![GroupElement::diagonal_roots(3, &[1, 1]), j(3)?], cap)?);
    out.push(named(
        "tetrahedral",
        vec![cycle(1)?, GroupElement::from_integers(1, &[vec![-1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]])?],
        cap,
    )?);
    out.push(named(
        "octahedral",
        vec![cycle(1)?, GroupElement::from_integers(1, &[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 1]])?],
        cap,
    )?);
    out.push(named("heisenberg27", vec![cycle(3)?, GroupElement::diagonal_roots(3, &[0, 1, 2])], cap)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_admissibility() {
        let groups = reference_groups().unwrap();
        let orders: Vec<usize> = groups.iter().map(|g| g.group.order()).collect();
        assert_eq!(orders, vec![8, 12, 16, 20, 24, 12, 12, 24, 27]);
        for g in &groups {
            assert!(g.group.pseudo_reflections().is_empty(), "{}", g.name);
        }
        let abelian: Vec<bool> = groups.iter().map(|g| g.group.is_abelian()).collect();
        assert_eq!(abelian, vec![false, false, false, false, false, true, false, false, false]);
    }
}
