fn main() {
    std::process::exit(vermalab::run(std::env::args_os()));
}
