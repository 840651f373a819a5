mod common;

#[test]
fn intersection_form() {
    common::intersection_bilinear_symmetric().unwrap();
}

#[test]
fn riemann_roch() {
    common::riemann_roch_integral_and_serre().unwrap();
}

#[test]
fn covers_identity() {
    common::covers_identity().unwrap();
}

#[test]
fn rank_nullity() {
    common::interpolation_rank_nullity().unwrap();
}

#[test]
fn irreducibility() {
    common::irreducibility_oracle().unwrap();
}

#[test]
fn byte_stable_reports() {
    common::reports_byte_stable().unwrap();
}

#[test]
fn triple_product() {
    common::pv2_symmetric().unwrap();
}
