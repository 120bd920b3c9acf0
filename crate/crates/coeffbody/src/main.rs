fn main() {
    std::process::exit(coeffbody::cli::dispatch(std::env::args()));
}
