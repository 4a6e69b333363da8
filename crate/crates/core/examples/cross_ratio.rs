use abmod::change_of_variable::{module_pushforward, ChangeOfVariable};
use abmod::classification::cross_ratio;
use abmod::module::FrescoPresentation;
use abmod::{rat, Rat, TruncSeries};

fn main() {
    let n = 24;
    let s = [1, 2, -1, 5]
        .iter()
        .map(|&c| TruncSeries::new(vec![Rat::one(), Rat::int(c)], n))
        .collect();
    let e = FrescoPresentation::new(rat!(9 / 2), vec![2; 4], s, n).unwrap().module();
    println!("cross ratio {}", cross_ratio(&e, [3, 4, 5]).unwrap());
    for coeffs in [vec![rat!(2)], vec![rat!(1), rat!(1)], vec![rat!(1), rat!(1 / 3)]] {
        let theta = ChangeOfVariable::new(coeffs).unwrap();
        let f = module_pushforward(&e, &theta);
        println!("after {:?}: {}", theta.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(), cross_ratio(&f, [3, 4, 5]).unwrap());
    }
}
