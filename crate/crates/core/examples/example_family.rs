use abmod::classification::{find_l, semisimplicity_witness};
use abmod::module::{delta_and_depth, FrescoPresentation};
use abmod::{rat, TruncSeries};

fn main() {
    let n = 18;
    let s1 = TruncSeries::one(n).add(&TruncSeries::monomial(rat!(1), 5, n));
    for z in [rat!(0), rat!(1), rat!(1 / 2), rat!(-2)] {
        let s2 = TruncSeries::one(n).add(&TruncSeries::monomial(z.clone(), 3, n));
        let pres = FrescoPresentation::new(rat!(7 / 2), vec![2, 3], vec![s1.clone(), s2], n).unwrap();
        let (delta, d) = delta_and_depth(&pres).unwrap();
        let l = find_l(&pres.module()).unwrap();
        println!("z = {z}: δ = {delta}, d = {d}, L exponent {l:?}");
    }
    let w = semisimplicity_witness(&rat!(7 / 2), 2, 3, &s1, &TruncSeries::one(n)).unwrap();
    println!("{}", serde_json::to_string(&w).unwrap());
}
