use crate::abstraction::{AbstractionConfig, AbstractionError, DomainConfig, PredicateConfig, Comparison, ScalarParametricAffine};

/// Safety specification of the scalar case study.
pub const SCALAR_SPEC: &str = "G x_le_1 & G x_ge_m1";

fn dom(lo: &str, hi: &str, cells: Option<usize>) -> DomainConfig {
    DomainConfig { lo: lo.into(), hi: hi.into(), cells }
}

/// The scalar safety setup: `x⁺ = (1+θ1)x + θ2 u + θ3 + d` with
/// θ1 ∈ [−0.5, 0.5], θ2 ∈ [1, 2], θ3 ∈ [−0.2, 0.2], d ∈ [−0.1, 0.1],
/// u ∈ [−1, 1] quantized to 11 points, X = [−1, 1] split into 10 cells and Θ
/// into 2·2·4 boxes.
pub fn scalar_config() -> AbstractionConfig {
    AbstractionConfig {
        x: dom("-1", "1", Some(10)),
        theta: vec![dom("-0.5", "0.5", Some(2)), dom("1", "2", Some(2)), dom("-0.2", "0.2", Some(4))],
        d: dom("-0.1", "0.1", None),
        u: dom("-1", "1", Some(10)),
        inputs: None,
        predicates: vec![
            PredicateConfig { name: "x_le_1".into(), op: Comparison::Le, threshold: "1".into() },
            PredicateConfig { name: "x_ge_m1".into(), op: Comparison::Ge, threshold: "-1".into() },
        ],
        spec: Some(SCALAR_SPEC.into()),
    }
}

/// System, specification text and abstraction config of the scalar study.
pub fn gen_scalar_safety() -> Result<(ScalarParametricAffine, String, AbstractionConfig), AbstractionError> {
    let cfg = scalar_config();
    Ok((cfg.system()?, SCALAR_SPEC.to_string(), cfg))
}
