package web;

import static org.spark.Spark.*;

import org.spark.Request;
import org.spark.Response;
import org.spark.Route;

public class App {
    public static void main(String[] args) {
        port(8080);
        get("/", (request, response) -> "Hello World");
        post("/users", (req, res) -> {
            res.status = 201;
            res.type("application/json");
            return req.body();
        });
        get("/users/:id", (Request req, Response res) -> req.params(":id"));
        before((request, response) -> response.redirect("/login"));
        exception(IllegalStateException.class, (e, req, res) -> {
            res.status = 500;
        });
        Route health = (req, res) -> res.body();
        get("/health", health);
    }
}
