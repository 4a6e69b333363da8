use abmod::change_of_variable::{pushforward, ChangeOfVariable};
use abmod::classification::{empirical_l, gamma_normal_basis, make_e_gamma};
use abmod::rat;

fn main() {
    let (lambda1, p1, p2) = (rat!(7 / 2), 2, 2);
    let n = 2 * (p1 + p2) + 8;
    let e = make_e_gamma(&lambda1, p1, p2, &rat!(1), n).unwrap();
    println!("γ = {}", gamma_normal_basis(&e).unwrap().gamma);

    for coeffs in [vec![rat!(2)], vec![rat!(1), rat!(1)], vec![rat!(1), rat!(0), rat!(1)]] {
        let theta = ChangeOfVariable::new(coeffs).unwrap();
        let f = pushforward(&e, &theta).unwrap();
        println!(
            "θ = {:?}: γ = {}",
            theta.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            gamma_normal_basis(&f).unwrap().gamma
        );
    }

    let l = empirical_l(&lambda1, p1, p2, n).unwrap();
    println!("L = {}", l.l);
    for flag in l.flags() {
        println!("  {flag}");
    }
}
