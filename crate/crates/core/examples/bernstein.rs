use abmod::change_of_variable::{module_pushforward, ChangeOfVariable};
use abmod::module::{fundamental_invariants, saturate_and_bernstein, FrescoPresentation};
use abmod::{rat, TruncSeries};

fn main() {
    let n = 16;
    let s = vec![
        TruncSeries::new(vec![rat!(1), rat!(1 / 2)], n),
        TruncSeries::new(vec![rat!(1), rat!(0), rat!(-3)], n),
    ];
    let pres = FrescoPresentation::new(rat!(10 / 3), vec![1, 3], s, n).unwrap();
    let e = pres.module();
    let sat = saturate_and_bernstein(&e, 4).unwrap();
    println!("Bernstein polynomial {}", sat.bernstein);
    println!("formula             {}", pres.bernstein_formula());
    println!("fundamental invariants {:?}", fundamental_invariants(&e).unwrap());

    let theta = ChangeOfVariable::new(vec![rat!(3), rat!(-1), rat!(2)]).unwrap();
    let f = module_pushforward(&e, &theta);
    println!("after θ = 3a − a² + 2a³: {}", saturate_and_bernstein(&f, 4).unwrap().bernstein);
}
