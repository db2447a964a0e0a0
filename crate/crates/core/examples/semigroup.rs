//! Products, stars and the action on lassos, typed in the expression syntax.

use ssgraph::corpus;
use ssgraph::expr::eval_lines;

fn main() -> ssgraph::error::Result<()> {
    let t = corpus::z2_two_loop_swap();
    let program = "
        (e0|1|@x)' * (e0|1|@x)        # s*s is the idempotent at the source
        (e0|s|@x) * (e1|1|@x)         # the group element moves e1 to e0 with twist s
        (e0|1|e0) * (e1|1|e1)         # incomparable paths multiply to 0
        (e0.e1|s|e0)' * (e0.e1|s|e0)
        (e1|s|e0) @ e0^inf
        (e1|s|e0) @ e1.(e0)^inf       # outside the domain
    ";
    for (src, value) in eval_lines(&t, program, 4096)? {
        println!("{src:<30} = {}", value.render(&t));
    }
    Ok(())
}
