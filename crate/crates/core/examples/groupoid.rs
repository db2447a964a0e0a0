//! Germs of the tight groupoid and the ultrafilter test for lasso filters.

use ssgraph::corpus;
use ssgraph::expr::{eval, parse_lasso, Value};
use ssgraph::groupoid::{filter_of_lasso, germ_equal, is_ultrafilter, FilterBase, Germ};

fn element(t: &ssgraph::triple::Triple, src: &str) -> ssgraph::semigroup::SElement {
    match eval(t, src, 4096) {
        Ok(Value::Element(s)) => s,
        other => panic!("{src}: {other:?}"),
    }
}

fn main() -> ssgraph::error::Result<()> {
    let t = corpus::z_odometer();
    let w = parse_lasso(&t, "e1^inf").expect("lasso");

    // the group is Z, written additively; (e1|0|e1) and (@x|0|@x) agree
    // near e1^inf, so their germs coincide
    let a = Germ::new(element(&t, "(e1|0|e1)"), w.clone())?;
    let b = Germ::new(element(&t, "(@x|0|@x)"), w.clone())?;
    println!("[(e1|0|e1); {}] = [(@x|0|@x); ..]: {:?}", w.name(t.graph()), germ_equal(&t, &a, &b, 4096));
    let c = Germ::new(element(&t, "(@x|1|@x)"), w.clone())?;
    println!("[(@x|1|@x); ..] = [(@x|0|@x); ..]: {:?}", germ_equal(&t, &c, &b, 4096));

    let s = Germ::new(element(&t, "(@x|1|@x)"), w.clone())?;
    println!("range of [(@x|1|@x); e1^inf] = {}", s.range(&t, 4096)?.name(t.graph()));
    let back = Germ::new(element(&t, "(@x|1|@x)'"), s.range(&t, 4096)?)?;
    let unit = back.compose(&t, &s, 4096)?.expect("composable");
    println!("inverse composed: {:?}", germ_equal(&t, &unit, &b, 4096));

    println!("filter of e1^inf: {:?}", is_ultrafilter(&t, &filter_of_lasso(&w), 6));
    let x = t.graph().parse_vertex("x")?;
    let chain = t.graph().extend_paths(x, 2, Some(2))?.into_iter().take(1).collect();
    println!("finite chain: {:?}", is_ultrafilter(&t, &FilterBase::Chain(chain), 6));
    Ok(())
}
