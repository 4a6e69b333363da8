use abmod::change_of_variable::{pushforward, rank1_eigen_series, ChangeOfVariable};
use abmod::module::FrescoPresentation;
use abmod::{rat, TruncSeries};

fn main() {
    let n = 14;
    let theta = ChangeOfVariable::new(vec![rat!(1), rat!(1)]).unwrap();

    let e = FrescoPresentation::plain(rat!(5 / 2), vec![], n);
    let f = pushforward(&e, &theta).unwrap();
    println!("rank 1: λ = {} stays λ = {}", e.lambda1, f.lambda1);
    println!("eigen series S(β) = {}", rank1_eigen_series(&rat!(5 / 2), &theta, 8).unwrap());

    let s = TruncSeries::new(vec![rat!(1), rat!(1), rat!(1)], n);
    let g = FrescoPresentation::new(rat!(9 / 2), vec![2], vec![s], n).unwrap();
    let h = pushforward(&g, &theta).unwrap();
    println!("rank 2 after a + a²: λ1 = {}, p = {:?}, S1 = {}", h.lambda1, h.p, h.s[0]);

    // θ then η equals η∘θ
    let eta = ChangeOfVariable::scaling(rat!(2)).unwrap();
    let both = theta.then(&eta, 6);
    println!("(a + a²) then 2a = {:?}", both.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
}
