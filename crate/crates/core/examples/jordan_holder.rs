use abmod::module::{delta_and_depth, principal_jh, standard_presentation, FrescoPresentation};
use abmod::{rat, TruncSeries};

fn main() {
    let n = 20;
    let theme = FrescoPresentation::new(
        rat!(7 / 2),
        vec![2, 3],
        vec![
            TruncSeries::new(vec![rat!(1), rat!(0), rat!(1)], n),
            TruncSeries::new(vec![rat!(1), rat!(0), rat!(0), rat!(1)], n),
        ],
        n,
    )
    .unwrap();
    let plain = FrescoPresentation::plain(rat!(7 / 2), vec![2, 3], n);

    for (name, pres) in [("theme", &theme), ("semi-simple", &plain)] {
        let (delta, d) = delta_and_depth(pres).unwrap();
        println!("{name}: δ = {delta}, d = {d}");
    }

    let e = theme.module();
    let jh = principal_jh(&e).unwrap();
    println!("principal J-H exponents {:?}", jh.exponents);
    let (back, _) = standard_presentation(&e).unwrap();
    println!("standard presentation: λ1 = {}, p = {:?}", back.lambda1, back.p);
    for (j, s) in back.s.iter().enumerate() {
        println!("  S{} = {s}", j + 1);
    }
}
