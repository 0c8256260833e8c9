use grothkit::comps::Composition;
use grothkit::qsym::{self, BasisTag};
use grothkit::shapes;

fn main() {
    // The multipeak expansion of a shifted family, exactly.
    let gq = shapes::grothendieck_GQ(&[2, 1], &[], 6, 6).unwrap();
    let e = qsym::expand_in_basis(&gq, BasisTag::K).unwrap();
    for (index, coeff) in e.terms() {
        println!("K{index:?}: {}", coeff.to_text());
    }

    // Peak compositions index the multipeak basis.
    let alpha = Composition::new(vec![2, 1]);
    assert!(alpha.is_peak());
}
