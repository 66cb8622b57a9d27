fn main() {
    let budget = std::env::var("HEITMANN_BUDGET").ok();
    std::process::exit(heitmann::main_with(std::env::args_os(), budget.as_deref()));
}
