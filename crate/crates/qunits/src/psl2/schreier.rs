//! Schreier generators and coset machinery for finite-index subgroups.
//!
//! Subgroups arrive as membership oracles, so everything here works through
//! right cosets H\Gamma: a transversal is found by breadth-first search over
//! multiplication by S and T, and Schreier's lemma turns the transversal into
//! a generating set { r g (overline{r g})^-1 } for H.

use std::collections::HashMap;



use super::{SubgroupHandle, UniMatrix};
use crate::error::{Error, Result};

/// Right-coset transversal for H in Gamma by breadth-first search from the
/// identity, multiplying by S, S^-1, T on the right. Representative 0 is the
/// identity. Errors when the search exceeds the handle's bound (an infinite
/// or misdeclared index).
pub fn coset_reps(h: &SubgroupHandle) -> Result<Vec<UniMatrix>> {
    if let Some(n) = h.principal_level {
        return super::coset_reps_gamma(n);
    }
    let bound = h.search_bound() as usize;
    let gens = [
        UniMatrix::s(),
        UniMatrix::s().inverse(),
        UniMatrix::t(),
    ];
    let mut reps: Vec<UniMatrix> = vec![UniMatrix::identity()];
    let mut frontier = vec![UniMatrix::identity()];
    while let Some(r) = frontier.pop() {
        for g in &gens {
            let candidate = r.mul(g);
            let known = reps.iter().any(|s| h.is_member(&candidate.mul(&s.inverse())));
            if !known {
                if reps.len() >= bound {
                    return Err(Error::Precondition(format!(
                        "coset enumeration for {} exceeded bound {bound}",
                        h.label
                    )));
                }
                reps.push(candidate.clone());
                frontier.push(candidate);
            }
        }
    }
    Ok(reps)
}

/// Index of the coset H·m in `reps`, by oracle scan or residue table.
fn identify_coset(
    h: &SubgroupHandle,
    reps: &[UniMatrix],
    table: Option<&HashMap<super::MatModN, usize>>,
    m: &UniMatrix,
) -> Result<usize> {
    if let (Some(n), Some(t)) = (h.principal_level, table) {
        return t
            .get(&m.reduce(n))
            .copied()
            .ok_or_else(|| Error::Inconsistency(format!("no coset for {m} mod {n}")));
    }
    let mut found = None;
    for (i, r) in reps.iter().enumerate() {
        if h.is_member(&m.mul(&r.inverse())) {
            if let Some(j) = found {
                return Err(Error::Inconsistency(format!(
                    "matrix {m} lies in two cosets ({j} and {i}): inconsistent oracle"
                )));
            }
            found = Some(i);
        }
    }
    found.ok_or_else(|| Error::Inconsistency(format!("matrix {m} lies in no coset: incomplete transversal")))
}

fn residue_table(h: &SubgroupHandle, reps: &[UniMatrix]) -> Option<HashMap<super::MatModN, usize>> {
    let n = h.principal_level?;
    let mut t = HashMap::with_capacity(reps.len());
    for (i, r) in reps.iter().enumerate() {
        t.insert(r.reduce(n), i);
    }
    Some(t)
}

/// Schreier generators of H from a complete coset-representative list.
///
/// Checks the transversal first: representative products r1 r2^-1 must be
/// non-members for distinct cosets (verified pairwise through the oracle for
/// small transversals, and through residue distinctness for principal
/// congruence subgroups where that check is equivalent). Every returned
/// matrix is verified to be a member, and the coset table over the
/// transversal is verified to close at exactly the index; by Schreier's
/// lemma for a transversal containing the identity, the returned set
/// generates H.
pub fn schreier_generators(h: &SubgroupHandle, ambient_reps: &[UniMatrix]) -> Result<Vec<UniMatrix>> {
    let mut reps = ambient_reps.to_vec();
    // The transversal must contain the identity; move the representative of
    // the trivial coset into slot 0 and replace it by the literal identity.
    let trivial = reps
        .iter()
        .position(|r| h.is_member(r))
        .ok_or_else(|| Error::Precondition("no representative for the trivial coset".into()))?;
    reps.swap(0, trivial);
    reps[0] = UniMatrix::identity();

    verify_transversal(h, &reps)?;
    let table = residue_table(h, &reps);

    let ambient = [UniMatrix::s(), UniMatrix::t()];
    let mut seen = std::collections::HashSet::new();
    let mut gens = Vec::new();
    for r in &reps {
        for g in &ambient {
            let rg = r.mul(g);
            let target = identify_coset(h, &reps, table.as_ref(), &rg)?;
            let gen = rg.mul(&reps[target].inverse());
            if !h.is_member(&gen) {
                return Err(Error::Inconsistency(format!(
                    "Schreier element {gen} failed the membership oracle"
                )));
            }
            let norm = gen.normalized();
            if !norm.is_identity_projective() && seen.insert((
                norm.a.clone(),
                norm.b.clone(),
                norm.c.clone(),
                norm.d.clone(),
            )) {
                gens.push(norm);
            }
        }
    }

    // Coset-table closure over the transversal must reproduce the index.
    let closure = verify_coset_table(h, &reps)?;
    if closure != reps.len() {
        return Err(Error::Inconsistency(format!(
            "coset table closed at {closure} cosets, expected {}",
            reps.len()
        )));
    }
    Ok(gens)
}

fn verify_transversal(h: &SubgroupHandle, reps: &[UniMatrix]) -> Result<()> {
    let small = reps.len() <= 400;
    if small {
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                if h.is_member(&reps[i].mul(&reps[j].inverse())) {
                    return Err(Error::Precondition(format!(
                        "representatives {i} and {j} lie in the same coset"
                    )));
                }
            }
        }
        return Ok(());
    }
    // Large transversals only arise for principal congruence subgroups,
    // where distinctness mod N is equivalent to coset distinctness.
    let n = h.principal_level.ok_or_else(|| {
        Error::Precondition("transversal too large for pairwise verification".into())
    })?;
    let mut seen = std::collections::HashSet::new();
    for r in reps {
        if !seen.insert(r.reduce(n)) {
            return Err(Error::Precondition(format!("duplicate residue {r} mod {n}")));
        }
    }
    Ok(())
}

/// Walk the coset action of S and T over the transversal and count the
/// cosets reached from the trivial one; a complete transversal closes at
/// exactly its own length.
pub fn verify_coset_table(h: &SubgroupHandle, reps: &[UniMatrix]) -> Result<usize> {
    let table = residue_table(h, reps);
    let ambient = [UniMatrix::s(), UniMatrix::t()];
    let mut reached = vec![false; reps.len()];
    reached[0] = true;
    let mut frontier = vec![0usize];
    let mut count = 1usize;
    while let Some(i) = frontier.pop() {
        for g in &ambient {
            let target = identify_coset(h, reps, table.as_ref(), &reps[i].mul(g))?;
            if !reached[target] {
                reached[target] = true;
                count += 1;
                frontier.push(target);
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::{coset_reps_gamma, enumerate_psl2_modn, index_gamma, MatModN};

    #[test]
    fn full_group_gives_ambient_generators() {
        let h = SubgroupHandle::from_oracle("Gamma", 1, Some(1), |_| true);
        let reps = vec![UniMatrix::identity()];
        let gens = schreier_generators(&h, &reps).unwrap();
        let expect_s = UniMatrix::s().normalized();
        let expect_t = UniMatrix::t().normalized();
        assert!(gens.contains(&expect_s));
        assert!(gens.contains(&expect_t));
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn gamma2_generators_are_congruent_to_identity() {
        let h = SubgroupHandle::gamma(2);
        let reps = coset_reps_gamma(2).unwrap();
        let gens = schreier_generators(&h, &reps).unwrap();
        assert!(!gens.is_empty());
        for g in &gens {
            assert!(g.is_congruent_identity(2), "{g} not congruent to +-I mod 2");
        }
    }

    #[test]
    fn schreier_membership_and_closure_for_small_levels() {
        for n in 2..=8u64 {
            let h = SubgroupHandle::gamma(n);
            let reps = coset_reps_gamma(n).unwrap();
            let gens = schreier_generators(&h, &reps).unwrap();
            for g in &gens {
                assert!(h.is_member(g));
            }
            let closed = verify_coset_table(&h, &reps).unwrap();
            assert_eq!(closed as u64, index_gamma(n).unwrap(), "level {n}");
        }
    }

    #[test]
    fn generated_subgroup_saturates_finite_quotient() {
        // The group generated by the Schreier generators of Gamma(N) must
        // have full image inside the mod-N^2 picture: its closure there is
        // exactly the image of Gamma(N) in PSL2(Z/N^2).
        for n in [2u64, 3] {
            let h = SubgroupHandle::gamma(n);
            let reps = coset_reps_gamma(n).unwrap();
            let gens = schreier_generators(&h, &reps).unwrap();
            let m = n * n;

            // Image of Gamma(N): all mod-N^2 classes congruent to +-I mod N.
            let target: std::collections::HashSet<MatModN> = enumerate_psl2_modn(m)
                .unwrap()
                .into_iter()
                .filter(|cls| lift_is_gamma_n(cls, n))
                .collect();

            // Closure of the generated set inside PSL2(Z/N^2).
            let mut closure: std::collections::HashSet<MatModN> =
                std::collections::HashSet::new();
            let gen_cls: Vec<MatModN> = gens.iter().map(|g| g.reduce(m)).collect();
            let mut frontier = vec![MatModN::identity(m)];
            closure.insert(MatModN::identity(m));
            while let Some(x) = frontier.pop() {
                for g in &gen_cls {
                    let y = x.mul(g);
                    if closure.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            assert_eq!(closure, target, "level {n}: Schreier generators do not saturate");
        }
    }

    fn lift_is_gamma_n(cls: &MatModN, n: u64) -> bool {
        super::super::lift_modn(cls).is_congruent_identity(n)
    }

    #[test]
    fn coset_reps_bfs_matches_index_for_oracle_subgroup() {
        // Gamma(3) presented purely as an oracle, no principal fast path.
        let h = SubgroupHandle::from_oracle("Gamma(3) as oracle", 3, Some(12), |m| {
            m.is_congruent_identity(3)
        });
        let reps = coset_reps(&h).unwrap();
        assert_eq!(reps.len(), 12);
        let gens = schreier_generators(&h, &reps).unwrap();
        for g in &gens {
            assert!(g.is_congruent_identity(3));
        }
    }

    #[test]
    fn inconsistent_oracle_is_reported() {
        // Oracle that accepts everything: every pair of "distinct"
        // representatives collides.
        let h = SubgroupHandle::from_oracle("bad", 0, Some(2), |_| true);
        let reps = vec![UniMatrix::identity(), UniMatrix::s()];
        assert!(schreier_generators(&h, &reps).is_err());
    }
}
