use abmod::change_of_variable::{pushforward, ChangeOfVariable};
use abmod::classification::presentation_theme_param;
use abmod::module::FrescoPresentation;
use abmod::{rat, TruncSeries};

fn main() {
    let (p, n) = (2, 16);
    let z = rat!(1);
    let s = TruncSeries::one(n).add(&TruncSeries::monomial(z.clone(), p, n));
    let e = FrescoPresentation::new(rat!(7 / 2), vec![p], vec![s], n).unwrap();
    println!("z = {}", presentation_theme_param(&e).unwrap());

    for coeffs in [vec![rat!(2)], vec![rat!(1), rat!(1)], vec![rat!(1), rat!(0), rat!(1)]] {
        let theta = ChangeOfVariable::new(coeffs).unwrap();
        let f = pushforward(&e, &theta).unwrap();
        println!(
            "θ = {:?}: z = {}",
            theta.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            presentation_theme_param(&f).unwrap()
        );
    }
}
