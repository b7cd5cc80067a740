mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn molien_matches_invariant_counts((n, gens) in finite_group_generators()) {
        check_molien(n, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn freudenthal_matches_weyl_dimension((gi, raw) in weight_instance()) {
        check_freudenthal(gi, &raw).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn hilbert_series_matches_monomial_count((w, gens) in monomial_ring_instance()) {
        check_hilbert(&w, &gens).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn image_membership_matches_linear_algebra(inst in membership_instance()) {
        check_membership(&inst).map_err(TestCaseError::fail)?;
    }
}
