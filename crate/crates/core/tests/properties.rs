mod common;

use common::props::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_an_abelian_group(t in triple()) { addition_laws(t)?; }

    #[test]
    fn multiplication_is_associative_commutative_distributive(t in triple()) { multiplication_laws(t)?; }

    #[test]
    fn inverse_is_two_sided(t in triple()) { inverse_law(t)?; }

    #[test]
    fn substitution_is_a_ring_homomorphism(x in unramified_pair()) { substitution_homomorphism(x)?; }

    #[test]
    fn rescaling_is_a_ring_homomorphism(x in rescaled()) { rescaling_homomorphism(x)?; }

    #[test]
    fn s_squares_to_identity_on_k3(x in k3_vector()) { s_involution_k3(x)?; }

    #[test]
    fn s_squares_to_identity_on_p2(x in p2_vector()) { s_involution_p2(x)?; }

    #[test]
    fn t_squares_to_identity(x in t_input()) { t_involution(x)?; }

    #[test]
    fn series_json_round_trip(t in triple()) { series_round_trip(t)?; }

    #[test]
    fn table_and_scalar_round_trip(x in table_input()) { table_round_trip(x)?; }
}
