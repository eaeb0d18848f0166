use sconvex_ostrowski::{
    certified_integrate, means_gap_bound, midpoint_sconvex_abs, BoundResultF32, EndpointDataF32,
    Function1DF32, GapBound, IntervalF32, MidpointVariant, SParamF32,
};

#[test]
fn single_precision_pipeline() {
    let iv = IntervalF32::new(0.0, 1.0).unwrap();
    let ep = EndpointDataF32::new(1.0, 1.0).unwrap();
    let r: BoundResultF32 = midpoint_sconvex_abs(&iv, SParamF32::one(), &ep).unwrap();
    assert!((r.value - 0.25).abs() < 1e-6);

    let p1 = means_gap_bound(1.0f32, 2.0, SParamF32::new(0.5).unwrap(), GapBound::P1).unwrap();
    assert!((p1.value - 0.147_140_45).abs() < 1e-5);

    let sq = Function1DF32::new("t^2", |t: f32| t * t).with_derivative(|t| 2.0 * t);
    let q =
        certified_integrate(&sq, &iv, 1e-3, MidpointVariant::p4(2.0).unwrap(), 1 << 16).unwrap();
    assert_eq!(q.panels, 512);
    assert!((q.approx - 1.0 / 3.0).abs() <= q.error_bound);
}
